/** Typed client for the correction service HTTP API.
 *
 * The base URL resolves, in order: an explicit constructor argument, a
 * `window.FLUENTFIX_API_BASE` global (set by the hosting page), then
 * same-origin relative paths.
 */

export interface TokenLabel {
  token_index: number;
  verdict: "fluent" | "disfluent";
  type: string;
}

export interface Span {
  start: number;
  end: number;
  type: string;
  detector: string;
}

export interface CorrectionResponse {
  raw_text: string;
  fluent_text: string;
  tokens: string[];
  labels: TokenLabel[];
  spans: Span[];
  utterance_type: string;
  disfluency_count: number;
}

export interface ProcessResponse extends CorrectionResponse {
  raw_audio_url: string;
  fluent_audio_url: string;
  timings: Record<string, number>;
}

export interface Prompt {
  id: string;
  lang: string;
  category: string;
  text: string;
}

/** Error carrying the failure surface so the UI can label it. */
export class ApiError extends Error {
  constructor(
    message: string,
    readonly kind: "network" | "pipeline" | "request",
    readonly stage?: string,
  ) {
    super(message);
  }
}

declare global {
  interface Window {
    FLUENTFIX_API_BASE?: string;
  }
}

export function defaultBase(): string {
  if (typeof window !== "undefined" && window.FLUENTFIX_API_BASE) {
    return window.FLUENTFIX_API_BASE.replace(/\/$/, "");
  }
  return "";
}

async function errorFrom(resp: Response): Promise<ApiError> {
  let code = `http_${resp.status}`;
  let message = resp.statusText;
  let stage: string | undefined;
  try {
    const body = await resp.json();
    code = body.code ?? code;
    message = body.message ?? message;
    stage = body.stage;
  } catch {
    // non-JSON error body; keep the status text
  }
  const kind = resp.status === 502 || stage ? "pipeline" : "request";
  return new ApiError(`${code}: ${message}`, kind, stage);
}

export class Api {
  constructor(
    private base: string = defaultBase(),
    private fetchImpl: typeof fetch = fetch.bind(globalThis),
  ) {}

  url(path: string): string {
    return this.base + path;
  }

  private async request(path: string, init?: RequestInit): Promise<Response> {
    let resp: Response;
    try {
      resp = await this.fetchImpl(this.url(path), init);
    } catch (err) {
      throw new ApiError(`cannot reach server: ${err}`, "network");
    }
    if (!resp.ok) {
      throw await errorFrom(resp);
    }
    return resp;
  }

  async languages(): Promise<string[]> {
    const resp = await this.request("/api/languages");
    return (await resp.json()).languages;
  }

  async topic(lang: string): Promise<Prompt> {
    const resp = await this.request(`/api/topic?lang=${encodeURIComponent(lang)}`);
    return resp.json();
  }

  async correct(text: string, lang: string): Promise<CorrectionResponse> {
    const resp = await this.request("/api/correct", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ text, lang }),
    });
    return resp.json();
  }

  async process(wav: Blob, lang: string): Promise<ProcessResponse> {
    const form = new FormData();
    form.append("audio", wav, "recording.wav");
    form.append("lang", lang);
    const resp = await this.request("/api/process", { method: "POST", body: form });
    return resp.json();
  }

  /** Absolute URL for a server-issued audio path (players bind to this). */
  audioUrl(serverPath: string): string {
    return this.url(serverPath);
  }
}
