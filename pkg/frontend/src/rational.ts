/**
 * Exact ratio of two bigints, as printed by the core: "3/7", or "1" when
 * the denominator is one.  The core always prints in lowest terms; this
 * class only carries the value across, it never re-reduces.
 */
export class Rational {
  readonly num: bigint;
  readonly den: bigint;

  constructor(num: bigint, den: bigint = 1n) {
    if (den === 0n) {
      throw new RangeError("zero denominator");
    }
    this.num = num;
    this.den = den;
  }

  static parse(text: string): Rational {
    const slash = text.indexOf("/");
    if (slash < 0) {
      return new Rational(BigInt(text));
    }
    return new Rational(BigInt(text.slice(0, slash)), BigInt(text.slice(slash + 1)));
  }

  toString(): string {
    return this.den === 1n ? this.num.toString() : `${this.num}/${this.den}`;
  }

  /** Nearest double; fine for display, not for exact comparisons. */
  toNumber(): number {
    return Number(this.num) / Number(this.den);
  }
}
