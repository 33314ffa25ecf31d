import { defineConfig } from "vitest/config";

// Every test shells out to the core CLI; the widest cases (n = 25000)
// need a dozen seconds each, so the default 5 s budget is far too tight.
export default defineConfig({
  test: {
    testTimeout: 60_000,
    hookTimeout: 60_000,
  },
});
