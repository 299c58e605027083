/** Entry point: build the app, render on change, poll every two seconds. */
import { App } from "./app.js";
import { Client } from "./api.js";
import { View } from "./dom.js";

const POLL_MS = 2000;

function boot(): void {
  const app = new App(new Client(""), {
    onChange: (vm) => view.render(vm),
  });
  const view = new View(app);
  view.render(app.vm);
  void app.start();
  setInterval(() => void app.refresh(), POLL_MS);
}

document.addEventListener("DOMContentLoaded", boot);
