// Browser bootstrap: binds the store to the DOM and routes delegated
// events to the controller. All logic lives in controller.ts/render.ts.

import { ApiClient } from "./api.js";
import { AppController } from "./controller.js";
import { render } from "./render.js";
import { Store } from "./store.js";

export function mount(root: HTMLElement, controller: AppController, store: Store): void {
  store.subscribe((state) => {
    root.innerHTML = render(state);
  });
  root.innerHTML = render(store.get());

  root.addEventListener("click", (event) => {
    const target = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
    if (!target) return;
    const action = target.dataset.action!;
    switch (action) {
      case "dismiss-banner":
        controller.dismissBanner();
        break;
      case "form-mode":
        controller.setFormMode(target.dataset.mode as never);
        break;
      case "submit-profile":
        event.preventDefault();
        void controller.submitProfile();
        break;
      case "recommend":
        void controller.recommend();
        break;
      case "alternatives":
        void controller.chooseAlternatives(target.dataset.category!);
        break;
      case "clear-alternatives":
        controller.clearAlternatives();
        break;
      case "pick-anchor":
        controller.pickAnchor(Number(target.dataset.productId));
        break;
      case "clear-anchor":
        controller.clearAnchor();
        break;
      case "zoom-in":
        controller.zoom(1.5);
        break;
      case "zoom-out":
        controller.zoom(1 / 1.5);
        break;
      case "zoom-reset":
        controller.resetView();
        break;
      case "load-embedding":
        void controller.loadEmbedding();
        break;
      case "refresh-history":
        void controller.refreshHistory();
        break;
    }
  });

  root.addEventListener("change", (event) => {
    const target = event.target as HTMLInputElement | HTMLSelectElement;
    const field = target.dataset.field;
    if (!field) return;
    const value =
      target instanceof HTMLInputElement && target.type === "checkbox"
        ? target.checked
        : target.value;
    controller.updateField(field, value);
  });
}

function start(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");
  const store = new Store();
  const api = new ApiClient("");
  const controller = new AppController(api, store);
  mount(root, controller, store);
  void controller.init();
}

if (typeof document !== "undefined") {
  start();
}
