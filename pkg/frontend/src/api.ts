// Typed client for the workbench HTTP API.  Numbers that the server sends as
// rational strings stay strings here: the UI never converts them.

export interface WedgeJson {
  p1: number;
  q1: number;
  p2: number;
  q2: number;
  c: number;
  a: string;
}

export interface InvariantsJson {
  sigma: number;
  Delta: number;
  Omega: number;
  shear: number;
  k_sign: number;
}

export interface ClassifyEntry {
  status: "mutable" | "borderline" | "immutable";
  witness: string;
}

export interface BudgetJson {
  a_minus: string;
  consumed: string[];
  partial_sums: string[];
  bound: { a: string; b: string; d: number };
  l2: string;
  verdict: string;
  fits_steps: number | null;
  overflow_sum: string | null;
  note: string;
}

export interface SessionJson {
  id: string;
  wedge: WedgeJson;
  bounds: [string, string];
  invariants: InvariantsJson;
  classify: { left: ClassifyEntry; right: ClassifyEntry };
  history_length: number;
  cursor: number;
  label: string;
  budget: BudgetJson | null;
}

export interface MoriJson {
  seed: { p1: number; q1: number; p2: number; q2: number; delta: number };
  pairs: [number, number][];
  display_pairs: [number, number][];
  classification: string;
}

export interface ApiError {
  status: number;
  error: string;
  witness?: string;
}

export class WorkbenchError extends Error {
  constructor(public readonly detail: ApiError) {
    super(detail.witness ? `${detail.error} (${detail.witness})` : detail.error);
  }
}

export type ChainPayload = {
  chain: { left: number[]; c: number; right: number[] };
  a: string;
  l1?: string;
  l2?: string;
};
export type WedgePayload = { wedge: WedgeJson; l1?: string; l2?: string };

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const res = await fetch(url, init);
  const text = await res.text();
  if (!res.ok) {
    let body: { error?: string; witness?: string } = {};
    try {
      body = JSON.parse(text);
    } catch {
      body = { error: text };
    }
    throw new WorkbenchError({
      status: res.status,
      error: body.error ?? `HTTP ${res.status}`,
      witness: body.witness,
    });
  }
  return JSON.parse(text) as T;
}

function post<T>(url: string, payload?: unknown): Promise<T> {
  return request<T>(url, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(payload ?? {}),
  });
}

export class WorkbenchClient {
  constructor(private readonly baseUrl: string) {}

  private url(path: string): string {
    return `${this.baseUrl.replace(/\/$/, "")}${path}`;
  }

  async createSession(payload: ChainPayload | WedgePayload): Promise<string> {
    const body = await post<{ id: string }>(this.url("/session"), payload);
    return body.id;
  }

  getSession(id: string): Promise<SessionJson> {
    return request<SessionJson>(this.url(`/session/${id}`));
  }

  mutate(id: string, side: "left" | "right"): Promise<SessionJson> {
    return post<SessionJson>(this.url(`/session/${id}/mutate`), { side });
  }

  antiflip(id: string, aMinus: string): Promise<SessionJson> {
    return post<SessionJson>(this.url(`/session/${id}/antiflip`), { aMinus });
  }

  flip(id: string, aPlus: string): Promise<SessionJson> {
    return post<SessionJson>(this.url(`/session/${id}/flip`), { aPlus });
  }

  undo(id: string): Promise<SessionJson> {
    return post<SessionJson>(this.url(`/session/${id}/undo`));
  }

  redo(id: string): Promise<SessionJson> {
    return post<SessionJson>(this.url(`/session/${id}/redo`));
  }

  mori(id: string, n: number): Promise<MoriJson> {
    return request<MoriJson>(this.url(`/session/${id}/mori?n=${n}`));
  }

  async renderSvg(id: string): Promise<string> {
    const res = await fetch(this.url(`/session/${id}/render.svg`));
    if (!res.ok) {
      throw new WorkbenchError({ status: res.status, error: `HTTP ${res.status}` });
    }
    return res.text();
  }
}
