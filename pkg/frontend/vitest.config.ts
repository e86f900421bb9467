import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "node",
    testTimeout: 30_000,
    hookTimeout: 30_000,
    // the integration file scripts one match end to end; order matters
    sequence: { concurrent: false },
  },
});
