/** Typed client for the workbench HTTP API. The server owns all state;
 * this module only ships requests and parses responses. */

export interface QuiverJson {
  n: number;
  frozen: number[];
  arrows: [number, number, number][];
}

export interface VariableView {
  vertex: number;
  text: string;
  frozen: boolean;
  alias: string | null;
}

export interface SeedJson {
  names: string[];
  quiver: QuiverJson;
  variables: { num: string; den: string; text: string }[];
}

export interface SessionState {
  id: string;
  preset: string | null;
  rows: number[] | null;
  history: number[];
  quiver: QuiverJson;
  seed: SeedJson;
  variables: VariableView[];
}

export interface PresetInfo {
  name: string;
  description: string;
  rows?: number[];
  aliases?: string[];
}

export interface SessionHistory {
  id: string;
  origin: Record<string, unknown>;
  history: number[];
}

export type CreateRequest =
  | { preset: string }
  | { word: number[]; cartan: string | number[][] }
  | { seed: Record<string, unknown> };

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

async function parse<T>(response: Response): Promise<T> {
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    const message =
      typeof body === "object" && body !== null && "error" in body
        ? String((body as { error: unknown }).error)
        : response.statusText;
    throw new ApiError(response.status, message);
  }
  return body as T;
}

export class ApiClient {
  constructor(readonly base: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.base + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    return parse<T>(response);
  }

  presets(): Promise<{ presets: PresetInfo[] }> {
    return this.request("GET", "/presets");
  }

  createSession(origin: CreateRequest): Promise<SessionState> {
    return this.request("POST", "/session", origin);
  }

  getSession(id: string): Promise<SessionState> {
    return this.request("GET", `/session/${id}`);
  }

  mutate(id: string, vertex: number): Promise<SessionState> {
    return this.request("POST", `/session/${id}/mutate`, { vertex });
  }

  undo(id: string): Promise<SessionState> {
    return this.request("POST", `/session/${id}/undo`);
  }

  history(id: string): Promise<SessionHistory> {
    return this.request("GET", `/session/${id}/history`);
  }
}
