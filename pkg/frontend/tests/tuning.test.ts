/** Console acceptance tests against a live tuning service. */

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { TunerClient } from "../src/api.js";
import { TunerStore } from "../src/state.js";
import { crosshairStyle, eofBadgeHtml, metricPanelHtml, sliderSpecs } from "../src/view.js";
import { LiveService, ppmBase64, startService } from "./service_harness.js";

let service: LiveService;
let client: TunerClient;

beforeAll(async () => {
  service = await startService();
  client = new TunerClient(service.baseUrl);
}, 60_000);

afterAll(async () => {
  await service?.stop();
});

describe("parameter sliders", () => {
  it("commit is acknowledged, visible via GET /params, and survives restart", async () => {
    const store = new TunerStore(client);
    await store.refreshParams();
    await store.commitParam("phi1_deg", 30);
    expect(store.snapshot().params["phi1_deg"]).toBe(30);
    expect((await client.getParams())["phi1_deg"]).toBe(30);

    await service.restart();
    expect((await client.getParams())["phi1_deg"]).toBe(30);

    // a hard refresh (fresh store) reproduces the committed values
    const fresh = new TunerStore(client);
    await fresh.refreshParams();
    expect(fresh.snapshot().params["phi1_deg"]).toBe(30);
  });

  it("rejected commit reverts the slider and surfaces the per-key diagnostic", async () => {
    const store = new TunerStore(client);
    await store.refreshParams();
    const before = store.snapshot().params["plane_a"];
    await store.commitParam("plane_a", -1);
    const snap = store.snapshot();
    expect(snap.params["plane_a"]).toBe(before);
    expect(snap.diagnostic?.keys).toContain("plane_a");
    expect((await client.getParams())["plane_a"]).toBe(before);
  });

  it("two rapid commits end with the last writer's value", async () => {
    const store = new TunerStore(client);
    await store.refreshParams();
    const first = store.commitParam("phi2_deg", 80);
    const second = store.commitParam("phi2_deg", 95);
    await Promise.all([first, second]);
    expect(store.snapshot().params["phi2_deg"]).toBe(95);
    expect((await client.getParams())["phi2_deg"]).toBe(95);
    expect(store.snapshot().pendingEdit).toBe(false);
  });

  it("network failure leaves state unchanged and raises a banner", async () => {
    const dead = new TunerStore(new TunerClient("http://127.0.0.1:1"));
    await dead.commitParam("phi1_deg", 42);
    const snap = dead.snapshot();
    expect(snap.banner).toMatch(/unreachable/);
    expect(snap.params["phi1_deg"]).toBeUndefined();
  });
});

describe("upload view", () => {
  // five vertical bands stepping through hues ~30..90 at full brightness
  const bands: [number, number, number][] = [
    [255, 128, 0],
    [255, 192, 0],
    [255, 255, 0],
    [192, 255, 0],
    [128, 255, 0],
  ];
  const image = ppmBase64(250, 80, (x) => bands[Math.min(4, Math.floor(x / 50))]!);

  it("widening the hue wedge never decreases the displayed crop percentage", async () => {
    const store = new TunerStore(client);
    await store.refreshParams();
    await store.commitParam("phi1_deg", 50);
    await store.commitParam("phi2_deg", 65);
    await store.commitParam("min_stalk_length_px", 5);
    await store.uploadImage(image);
    let prev = store.cropPercent();
    expect(prev).not.toBeNull();
    for (const phi2 of [80, 100, 120]) {
      await store.commitParam("phi2_deg", phi2);
      await store.analyzeCurrentView();
      const now = store.cropPercent();
      expect(now).not.toBeNull();
      expect(now!).toBeGreaterThanOrEqual(prev!);
      prev = now;
    }
    expect(prev!).toBeGreaterThan(0);
  });

  it("metric panel reflects the service response only", async () => {
    const store = new TunerStore(client);
    await store.refreshParams();
    await store.commitParam("phi1_deg", 35);
    await store.commitParam("phi2_deg", 75);
    await store.uploadImage(ppmBase64(220, 60, () => [255, 255, 0]));
    const snap = store.snapshot();
    expect(snap.uploadResult?.crop_fraction).toBe(1.0);
    const html = metricPanelHtml(snap);
    expect(html).toContain("100.0%");
    expect(html).toContain(`(${snap.uploadResult!.centroid![0]}, ${snap.uploadResult!.centroid![1]})`);
  });
});

describe("simulator view", () => {
  it("start shows TRACKING at step 0; stepping advances the counter", async () => {
    const store = new TunerStore(client);
    await store.refreshParams();
    await store.simStart({ preset: "single_field", cols: 10, rows: 10, seed: 2 });
    let snap = store.snapshot();
    expect(snap.simFrame?.nav_mode).toBe("TRACKING");
    expect(snap.simFrame?.steps_used).toBe(0);
    await store.simStep(10);
    snap = store.snapshot();
    expect(snap.simFrame?.steps_used).toBe(10);
  });

  it("step before start surfaces the 409 as a banner", async () => {
    await service.restart();
    const store = new TunerStore(client);
    await store.refreshParams();
    await store.simStep(1);
    expect(store.snapshot().banner).toMatch(/start/i);
  });

  it("end-of-field badge lights when the mission reaches a field boundary gap", async () => {
    const store = new TunerStore(client);
    await store.refreshParams();
    await store.commitParam("gap_width_cells", 8);
    await store.simStart({ preset: "two_fields_with_gap", cols: 20, rows: 26, seed: 7 });
    expect(store.badgeLit()).toBe(false);
    let litAt: number | null = null;
    for (let i = 0; i < 160 && litAt === null; i++) {
      await store.simStep(5);
      if (store.badgeLit()) litAt = store.snapshot().simFrame!.steps_used;
    }
    expect(litAt).not.toBeNull();
    const html = eofBadgeHtml(store.badgeLit());
    expect(html).toContain("badge-on");
  }, 240_000);
});

describe("pure view helpers", () => {
  it("slider specs cover the operator-tunable keys", () => {
    const keys = sliderSpecs().map((s) => s.key);
    for (const k of ["phi1_deg", "phi2_deg", "plane_a", "plane_b", "tilt_tolerance_deg"]) {
      expect(keys).toContain(k);
    }
  });

  it("crosshair positions scale into percentages", () => {
    expect(crosshairStyle([200, 150], 400, 300)).toBe("left:50.00%;top:50.00%");
    expect(crosshairStyle(null, 400, 300)).toBeNull();
  });
});
