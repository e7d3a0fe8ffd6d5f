/** Typed client for the stability engine's JSON API.
 *
 * The UI never computes stability math locally: every verdict it shows comes
 * from one of these calls. The fetch function is injectable for tests.
 */

export interface Plant {
  gain: number;
  delay: number;
  time_constants: number[];
  zero_constants: number[];
}

export interface Report {
  principal_term_ok: boolean;
  principal_term_reason: string | null;
  case: string;
  m_p: number;
  epsilon: string;
  phi1: number;
  phi2: number;
  pole_count: number;
  pole_count_certified: boolean;
  Ne1: number | null;
  required_Ne: Record<string, number>;
  achieved_Ne: Record<string, number>;
  hd_bound: number | null;
  zone: string | null;
  feature_vector: number[];
  verdict: "Stabilizable" | "NotStabilizable" | "Degenerate";
  flags: string[];
}

export interface CheckResponse {
  schema_version: string;
  report: Report;
}

export interface ConstraintDto {
  y0: number;
  rhs: number;
  dir: "lt" | "gt";
}

export interface TriangleDto {
  V: [number, number];
  U: [number, number];
  W: [number, number];
}

export interface RegionResponse {
  schema_version: string;
  h: number;
  case: string;
  constraints: ConstraintDto[];
  triangles: TriangleDto[];
  polygon: [number, number][];
  flags: string[];
  interval: [number, number];
}

export interface SweepResponse {
  schema_version: string;
  interval: [number, number];
  slices: Omit<RegionResponse, "schema_version" | "interval">[];
}

export interface VerifyResponse {
  schema_version: string;
  rhp_zeros: number | null;
  certified: boolean;
  marginal: boolean;
}

export interface HealthResponse {
  status: string;
  schema_version: string;
}

/** Diagnostic payload of a non-2xx response; 422 bodies carry the report. */
export interface ErrorPayload {
  schema_version?: string;
  error?: string;
  report?: Report;
  interval?: [number, number];
}

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
    readonly payload: ErrorPayload | null,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (u, i) => fetch(u, i),
  ) {}

  private async handle<T>(res: Response): Promise<T> {
    if (!res.ok) {
      let payload: ErrorPayload | null = null;
      try {
        payload = (await res.json()) as ErrorPayload;
      } catch {
        payload = null;
      }
      throw new ApiError(payload?.error ?? `HTTP ${res.status}`, res.status, payload);
    }
    return (await res.json()) as T;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const res = await this.fetchFn(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    return this.handle<T>(res);
  }

  async health(): Promise<HealthResponse> {
    const res = await this.fetchFn(this.baseUrl + "/api/health");
    return this.handle<HealthResponse>(res);
  }

  check(plant: Plant, hD?: number | null): Promise<CheckResponse> {
    return this.post("/api/check", { plant, h_d: hD ?? null });
  }

  region(plant: Plant, h: number): Promise<RegionResponse> {
    return this.post("/api/region", { plant, h });
  }

  sweep(plant: Plant, steps: number): Promise<SweepResponse> {
    return this.post("/api/sweep", { plant, steps });
  }

  verify(plant: Plant, h: number, hI: number, hD: number): Promise<VerifyResponse> {
    return this.post("/api/verify", { plant, h, h_i: hI, h_d: hD });
  }
}
