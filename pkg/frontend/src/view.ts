/** Pure render helpers: snapshots in, HTML strings out. DOM-free so the
 *  metric panel and badge logic stay testable outside a browser. */

import { Snapshot } from "./state.js";

export interface SliderSpec {
  key: string;
  label: string;
  min: number;
  max: number;
  step: number;
}

/** Operator-facing controls: the cut planes, tilt/length filters, the
 *  end-of-field thresholds and the renderer brightness (for simulating the
 *  morning-to-afternoon light drift). */
export function sliderSpecs(): SliderSpec[] {
  return [
    { key: "phi1_deg", label: "hue wedge start (deg)", min: 0, max: 360, step: 1 },
    { key: "phi2_deg", label: "hue wedge end (deg)", min: 0, max: 360, step: 1 },
    { key: "plane_a", label: "plane a (saturation weight)", min: 0, max: 3, step: 0.05 },
    { key: "plane_b", label: "plane b (brightness floor)", min: 0, max: 2, step: 0.01 },
    { key: "tilt_tolerance_deg", label: "tilt tolerance (deg)", min: 0, max: 44, step: 1 },
    { key: "min_stalk_length_px", label: "min stalk length (px)", min: 1, max: 120, step: 1 },
    { key: "eof_drop_threshold_px", label: "end-of-field drop (px)", min: 1, max: 150, step: 1 },
    { key: "eof_min_gap_width_cols", label: "end-of-field gap width (cols)", min: 1, max: 400, step: 1 },
    { key: "brightness", label: "sim brightness", min: 0.2, max: 2, step: 0.05 },
  ];
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function eofBadgeHtml(lit: boolean): string {
  return `<span class="badge ${lit ? "badge-on" : "badge-off"}" id="eof-badge">${
    lit ? "END OF FIELD" : "in field"
  }</span>`;
}

export function metricPanelHtml(snap: Snapshot): string {
  const result =
    snap.view === "upload" ? snap.uploadResult : snap.simFrame?.perception ?? null;
  const pct =
    result === null ? "–" : `${(result.crop_fraction * 100).toFixed(1)}%`;
  const segments = result === null ? "–" : String(result.segments_count);
  const centroid =
    result === null || result.centroid === null
      ? "none"
      : `(${result.centroid[0]}, ${result.centroid[1]})`;
  const badge = eofBadgeHtml(result?.end_of_field ?? false);
  const sim = snap.simFrame;
  const simRow =
    snap.view === "simulator" && sim
      ? `<div class="metric"><span>mode</span><b id="nav-mode">${esc(sim.nav_mode)}</b></div>
         <div class="metric"><span>steps</span><b id="step-counter">${sim.steps_used}</b></div>
         <div class="metric"><span>coverage</span><b>${(sim.coverage_fraction * 100).toFixed(1)}%</b></div>`
      : "";
  return `
    <div class="metric"><span>crop pixels</span><b id="crop-percent">${pct}</b></div>
    <div class="metric"><span>segments</span><b id="segment-count">${segments}</b></div>
    <div class="metric"><span>centroid</span><b id="centroid">${centroid}</b></div>
    <div class="metric"><span>field state</span>${badge}</div>
    ${simRow}`;
}

export function bannerHtml(snap: Snapshot): string {
  if (snap.banner) return `<div class="banner banner-error">${esc(snap.banner)}</div>`;
  if (snap.diagnostic)
    return `<div class="banner banner-warn">rejected ${esc(
      snap.diagnostic.keys.join(", "),
    )}: ${esc(snap.diagnostic.message)}</div>`;
  return "";
}

/** Centroid crosshair position as percentages of the displayed image box. */
export function crosshairStyle(
  centroid: [number, number] | null,
  imageW: number,
  imageH: number,
): string | null {
  if (!centroid || imageW < 1 || imageH < 1) return null;
  const [c, r] = centroid;
  return `left:${((c / imageW) * 100).toFixed(2)}%;top:${((r / imageH) * 100).toFixed(2)}%`;
}
