/** Console state: the single source of truth is the service.
 *
 * Sliders always show the last server-acknowledged parameter values: a
 * rejected or failed update reverts the control and surfaces the
 * diagnostic. Mutations are queued so at most one is in flight; reads may
 * overlap freely.
 */

import {
  ApiError,
  ParamDoc,
  SegmentResponse,
  SimFrameResponse,
  TunerClient,
} from "./api.js";

export type ViewMode = "upload" | "simulator";

export interface Diagnostic {
  keys: string[];
  message: string;
}

export interface Snapshot {
  params: ParamDoc;
  view: ViewMode;
  pendingEdit: boolean;
  banner: string | null;
  diagnostic: Diagnostic | null;
  uploadResult: SegmentResponse | null;
  simFrame: SimFrameResponse | null;
  uploadedImageB64: string | null;
}

type Listener = (snap: Snapshot) => void;

export class TunerStore {
  private params: ParamDoc = {};
  private view: ViewMode = "upload";
  private banner: string | null = null;
  private diagnostic: Diagnostic | null = null;
  private uploadResult: SegmentResponse | null = null;
  private simFrame: SimFrameResponse | null = null;
  private uploadedImageB64: string | null = null;
  private pendingMutations = 0;
  private mutationQueue: Promise<void> = Promise.resolve();
  private listeners: Listener[] = [];

  constructor(readonly client: TunerClient) {}

  onChange(fn: Listener): void {
    this.listeners.push(fn);
  }

  snapshot(): Snapshot {
    return {
      params: { ...this.params },
      view: this.view,
      pendingEdit: this.pendingMutations > 0,
      banner: this.banner,
      diagnostic: this.diagnostic,
      uploadResult: this.uploadResult,
      simFrame: this.simFrame,
      uploadedImageB64: this.uploadedImageB64,
    };
  }

  private emit(): void {
    const snap = this.snapshot();
    for (const fn of this.listeners) fn(snap);
  }

  async refreshParams(): Promise<void> {
    try {
      this.params = await this.client.getParams();
      this.banner = null;
    } catch (err) {
      this.banner = `service unreachable: ${(err as Error).message}`;
    }
    this.emit();
  }

  setView(view: ViewMode): void {
    this.view = view;
    this.emit();
  }

  /** Commit one slider value. Serialized: concurrent commits run in order,
   *  so the final server state is the last commit (last writer wins). */
  commitParam(key: string, value: number): Promise<void> {
    this.pendingMutations += 1;
    this.emit();
    const run = async () => {
      try {
        this.params = await this.client.putParams({ [key]: value });
        this.diagnostic = null;
        this.banner = null;
      } catch (err) {
        if (err instanceof ApiError) {
          // revert: keep last acknowledged params, surface the per-key text
          this.diagnostic = { keys: err.keys.length ? err.keys : [key], message: err.message };
        } else {
          this.banner = `service unreachable: ${(err as Error).message}`;
        }
      } finally {
        this.pendingMutations -= 1;
        this.emit();
      }
    };
    this.mutationQueue = this.mutationQueue.then(run);
    return this.mutationQueue;
  }

  /** Remember the uploaded image (base64) and analyze it. */
  async uploadImage(imageB64: string): Promise<void> {
    this.uploadedImageB64 = imageB64;
    this.view = "upload";
    await this.analyzeCurrentView();
  }

  /** Re-run the active view through the service. */
  async analyzeCurrentView(): Promise<void> {
    try {
      if (this.view === "upload") {
        if (!this.uploadedImageB64) return;
        this.uploadResult = await this.client.segment(this.uploadedImageB64);
      } else {
        this.simFrame = await this.client.simFrame();
      }
      this.banner = null;
    } catch (err) {
      this.banner =
        err instanceof ApiError ? err.message : `service unreachable: ${(err as Error).message}`;
    }
    this.emit();
  }

  async simStart(opts: {
    preset?: string;
    cols?: number;
    rows?: number;
    seed?: number;
  }): Promise<void> {
    this.pendingMutations += 1;
    this.emit();
    try {
      await this.client.simStart(opts);
      this.view = "simulator";
      this.simFrame = await this.client.simFrame();
      this.banner = null;
    } catch (err) {
      this.banner = err instanceof ApiError ? err.message : (err as Error).message;
    } finally {
      this.pendingMutations -= 1;
      this.emit();
    }
  }

  async simStep(n: number): Promise<void> {
    this.pendingMutations += 1;
    this.emit();
    try {
      await this.client.simStep(n);
      this.simFrame = await this.client.simFrame();
      this.banner = null;
    } catch (err) {
      this.banner = err instanceof ApiError ? err.message : (err as Error).message;
    } finally {
      this.pendingMutations -= 1;
      this.emit();
    }
  }

  /** End-of-field badge state for the active view. */
  badgeLit(): boolean {
    if (this.view === "upload") return this.uploadResult?.end_of_field ?? false;
    return this.simFrame?.perception.end_of_field ?? false;
  }

  /** Crop-pixel percentage shown in the metric panel, for the active view. */
  cropPercent(): number | null {
    const f =
      this.view === "upload"
        ? this.uploadResult?.crop_fraction
        : this.simFrame?.perception.crop_fraction;
    return f === undefined || f === null ? null : f * 100;
  }
}
