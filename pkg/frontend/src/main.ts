import { ApiClient } from "./api";
import { boot } from "./app";

const root = document.getElementById("app");
if (root) {
  // same-origin: the service that answers /query also serves this bundle
  const { ready } = boot(root, new ApiClient(""));
  ready.catch((err) => {
    const note = document.createElement("div");
    note.className = "boot-error";
    note.textContent = `could not reach the service: ${err}`;
    root.prepend(note);
  });
}
