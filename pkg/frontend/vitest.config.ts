import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    globals: true,
    environment: "node",
    // the live test boots the real service; give it room
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});
