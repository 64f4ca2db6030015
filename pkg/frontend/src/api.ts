/** Typed client for the tuning service. Every number the console displays
 *  comes from these responses; the console never recomputes pipeline
 *  results locally. */

export type ParamValue = number | [number, number][] | null;
export type ParamDoc = Record<string, ParamValue>;

export interface SegmentResponse {
  crop_fraction: number;
  segments_count: number;
  centroid: [number, number] | null;
  end_of_field: boolean;
  overlay: string;
  mask_overlay: string;
}

export interface SimStartResponse {
  started: { preset: string; cols: number; rows: number; seed: number };
  nav_mode: string;
  steps_used: number;
}

export interface SimStepResponse {
  steps_used: number;
  nav_mode: string;
  done: boolean;
  coverage_fraction: number;
}

export interface SimFrameResponse {
  steps_used: number;
  nav_mode: string;
  done: boolean;
  coverage_fraction: number;
  pose: { x: number; y: number; heading: number };
  perception: {
    crop_fraction: number;
    segments_count: number;
    centroid: [number, number] | null;
    end_of_field: boolean;
  };
  image_b64: string;
  overlay: string;
  mask_overlay: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
    readonly keys: string[] = [],
  ) {
    super(message);
  }
}

async function parseError(res: Response): Promise<ApiError> {
  let message = `${res.status} ${res.statusText}`;
  let keys: string[] = [];
  try {
    const body = (await res.json()) as { error?: string; keys?: string[] };
    if (body.error) message = body.error;
    if (body.keys) keys = body.keys;
  } catch {
    /* non-JSON error body */
  }
  return new ApiError(res.status, message, keys);
}

export class TunerClient {
  constructor(readonly baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await fetch(this.baseUrl + path, init);
    if (!res.ok) throw await parseError(res);
    return (await res.json()) as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("/health");
  }

  getParams(): Promise<ParamDoc> {
    return this.request("/params");
  }

  putParams(patch: ParamDoc): Promise<ParamDoc> {
    return this.request("/params", {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(patch),
    });
  }

  segment(imageB64: string): Promise<SegmentResponse> {
    return this.request("/segment", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ image_b64: imageB64 }),
    });
  }

  simStart(opts: {
    preset?: string;
    cols?: number;
    rows?: number;
    seed?: number;
  }): Promise<SimStartResponse> {
    return this.request("/sim/start", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(opts),
    });
  }

  simStep(n: number): Promise<SimStepResponse> {
    return this.request("/sim/step", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ n }),
    });
  }

  simFrame(): Promise<SimFrameResponse> {
    return this.request("/sim/frame");
  }
}
