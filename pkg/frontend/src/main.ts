/** Browser bootstrap: wires the store to the DOM. Sliders commit on release
 *  (change event), not while dragging, so the service sees human-paced,
 *  atomic updates. */

import { TunerClient } from "./api.js";
import { Snapshot, TunerStore } from "./state.js";
import { bannerHtml, crosshairStyle, metricPanelHtml, sliderSpecs } from "./view.js";

const client = new TunerClient("");
const store = new TunerStore(client);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function buildSliders(): void {
  const host = el<HTMLDivElement>("sliders");
  for (const spec of sliderSpecs()) {
    const row = document.createElement("label");
    row.className = "slider-row";
    row.innerHTML = `
      <span class="slider-label">${spec.label}</span>
      <input type="range" min="${spec.min}" max="${spec.max}" step="${spec.step}"
             data-key="${spec.key}">
      <input type="number" min="${spec.min}" max="${spec.max}" step="${spec.step}"
             data-key="${spec.key}" class="slider-value">`;
    host.appendChild(row);
  }
  host.addEventListener("change", (ev) => {
    const input = ev.target as HTMLInputElement;
    const key = input.dataset.key;
    if (!key) return;
    void store.commitParam(key, Number(input.value));
  });
}

function renderSliders(snap: Snapshot): void {
  for (const input of document.querySelectorAll<HTMLInputElement>("[data-key]")) {
    const key = input.dataset.key;
    if (!key) continue;
    const value = snap.params[key];
    if (typeof value === "number" && document.activeElement !== input) {
      input.value = String(value);
    }
  }
}

function renderImages(snap: Snapshot): void {
  const base = el<HTMLImageElement>("base-image");
  const mask = el<HTMLImageElement>("mask-overlay");
  const stalk = el<HTMLImageElement>("stalk-overlay");
  const cross = el<HTMLDivElement>("crosshair");

  const src =
    snap.view === "upload"
      ? snap.uploadResult && snap.uploadedImageB64
        ? `data:image/x-portable-pixmap;base64,${snap.uploadedImageB64}`
        : null
      : snap.simFrame
        ? `data:image/png;base64,${snap.simFrame.image_b64}`
        : null;
  const result = snap.view === "upload" ? snap.uploadResult : snap.simFrame;
  if (!src || !result) {
    cross.style.display = "none";
    return;
  }
  // uploaded PPMs cannot be shown directly by every browser: fall back to the
  // overlays (which are PNG) as the base when needed
  base.src =
    snap.view === "upload" ? `data:image/png;base64,${result.mask_overlay}` : src;
  mask.src = `data:image/png;base64,${result.mask_overlay}`;
  stalk.src = `data:image/png;base64,${result.overlay}`;
  mask.style.opacity = el<HTMLInputElement>("toggle-mask").checked ? "0.85" : "0";
  stalk.style.opacity = el<HTMLInputElement>("toggle-stalks").checked ? "0.85" : "0";

  const perception = snap.view === "upload" ? snap.uploadResult : snap.simFrame?.perception;
  const style = crosshairStyle(
    perception?.centroid ?? null,
    base.naturalWidth || 1,
    base.naturalHeight || 1,
  );
  if (style) {
    cross.style.cssText = `display:block;${style}`;
  } else {
    cross.style.display = "none";
  }
}

function render(snap: Snapshot): void {
  el("metrics").innerHTML = metricPanelHtml(snap);
  el("banner-host").innerHTML = bannerHtml(snap);
  el("pending").style.visibility = snap.pendingEdit ? "visible" : "hidden";
  renderSliders(snap);
  renderImages(snap);
  el<HTMLButtonElement>("view-upload").classList.toggle("active", snap.view === "upload");
  el<HTMLButtonElement>("view-sim").classList.toggle("active", snap.view === "simulator");
}

function fileToBase64(file: File): Promise<string> {
  return new Promise((resolve, reject) => {
    const reader = new FileReader();
    reader.onload = () => {
      const text = reader.result as string;
      resolve(text.slice(text.indexOf(",") + 1));
    };
    reader.onerror = () => reject(reader.error);
    reader.readAsDataURL(file);
  });
}

function wire(): void {
  buildSliders();
  store.onChange(render);

  el<HTMLInputElement>("file-input").addEventListener("change", async (ev) => {
    const file = (ev.target as HTMLInputElement).files?.[0];
    if (file) await store.uploadImage(await fileToBase64(file));
  });

  el<HTMLButtonElement>("view-upload").addEventListener("click", () => store.setView("upload"));
  el<HTMLButtonElement>("view-sim").addEventListener("click", () => store.setView("simulator"));
  el<HTMLButtonElement>("analyze").addEventListener("click", () => void store.analyzeCurrentView());

  el<HTMLButtonElement>("sim-start").addEventListener("click", () => {
    void store.simStart({
      preset: el<HTMLSelectElement>("sim-preset").value,
      cols: Number(el<HTMLInputElement>("sim-cols").value),
      rows: Number(el<HTMLInputElement>("sim-rows").value),
      seed: Number(el<HTMLInputElement>("sim-seed").value),
    });
  });
  el<HTMLButtonElement>("sim-step").addEventListener("click", () => {
    void store.simStep(Number(el<HTMLInputElement>("sim-step-count").value));
  });
  for (const toggle of ["toggle-mask", "toggle-stalks"]) {
    el<HTMLInputElement>(toggle).addEventListener("change", () => render(store.snapshot()));
  }

  void store.refreshParams();
}

wire();
