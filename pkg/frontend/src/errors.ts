/**
 * Typed errors mirroring the core's exit-code contract.
 *
 * The command line reports failures on stderr and encodes the class in the
 * exit status: 2 for malformed input, 3 when a requested fast path is
 * unavailable, 4 for tied sample values under the strict tie policy.
 */

/** Base class for failures reported by the core. */
export class PermcountError extends Error {
  /** Exit status of the underlying CLI process. */
  readonly exitCode: number;

  constructor(message: string, exitCode: number) {
    super(message);
    this.name = new.target.name;
    this.exitCode = exitCode;
  }
}

/** Exit code 2: the core rejected the input (bad permutation, pattern, CSV…). */
export class InvalidInputError extends PermcountError {}

/**
 * Exit code 3: the requested fast path is unavailable.  None of the three
 * bound operations force a route, so this is mapped for completeness only.
 */
export class FastPathUnavailableError extends PermcountError {}

/** Exit code 4: tied sample values under the strict tie policy. */
export class TiesPresentError extends PermcountError {}

/** Map a nonzero CLI exit to the matching error class. */
export function errorForExit(exitCode: number, detail: string): PermcountError {
  const message = detail || `core exited with status ${exitCode}`;
  switch (exitCode) {
    case 2:
      return new InvalidInputError(message, exitCode);
    case 3:
      return new FastPathUnavailableError(message, exitCode);
    case 4:
      return new TiesPresentError(message, exitCode);
    default:
      return new PermcountError(message, exitCode);
  }
}
