/** Fetch client for the lisakit service with per-key request superseding. */

import type {
  ClusterMapPayload,
  ColorMode,
  ComponentPayload,
  DualDensityPayload,
  GeometryPayload,
  MetaPayload,
  NetworkPayload,
  RadialPayload,
} from "./types.js";

export type FetchLike = (url: string, init?: { signal?: AbortSignal }) => Promise<{
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}>;

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  private controllers = new Map<string, AbortController>();

  constructor(
    private base = "",
    private fetchFn: FetchLike = (...args) => fetch(...(args as [string])),
  ) {}

  private async get<T>(path: string, superseded?: string): Promise<T> {
    let signal: AbortSignal | undefined;
    if (superseded !== undefined) {
      this.controllers.get(superseded)?.abort();
      const controller = new AbortController();
      this.controllers.set(superseded, controller);
      signal = controller.signal;
    }
    const resp = await this.fetchFn(this.base + path, { signal });
    if (!resp.ok) {
      const body = (await resp.json().catch(() => ({}))) as {
        error?: { message?: string };
      };
      throw new ApiError(resp.status, body?.error?.message ?? `HTTP ${resp.status}`);
    }
    return (await resp.json()) as T;
  }

  meta(): Promise<MetaPayload> {
    return this.get("/api/meta");
  }

  geometry(): Promise<GeometryPayload> {
    return this.get("/api/geometry");
  }

  network(): Promise<NetworkPayload> {
    return this.get("/api/plots/network");
  }

  clusterMap(): Promise<ClusterMapPayload> {
    return this.get("/api/plots/cluster-map");
  }

  /** Superseding fetch: a newer hover aborts the in-flight request. */
  dualDensity(id: string, mode: ColorMode): Promise<DualDensityPayload> {
    return this.get(
      `/api/plots/dual-density/${encodeURIComponent(id)}?mode=${mode}`,
      "dual-density",
    );
  }

  radial(id: string): Promise<RadialPayload> {
    return this.get(`/api/plots/radial/${encodeURIComponent(id)}`, "radial");
  }

  component(id: string): Promise<ComponentPayload> {
    return this.get(`/api/component/${encodeURIComponent(id)}`);
  }
}

/** Trailing-edge debounce; hovers are collapsed to one request per pause. */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => fn(...args), waitMs);
  };
}
