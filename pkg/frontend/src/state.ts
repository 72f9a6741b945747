/** Session state: one status at a time, server responses rendered verbatim. */

import type { ProcessResponse, Prompt } from "./api.js";

export type Status = "idle" | "recording" | "processing" | "done" | "error";

export interface UiError {
  kind: "mic" | "network" | "pipeline" | "request";
  message: string;
  stage?: string;
  retryable: boolean;
}

export interface SessionState {
  lang: string;
  languages: string[];
  prompt: Prompt | null;
  status: Status;
  /** Last successful pipeline response, exactly as the server sent it. */
  result: ProcessResponse | null;
  error: UiError | null;
  /** Non-blocking notice (e.g. topic fetch failed); previous prompt stays. */
  toast: string | null;
}

export function initialState(): SessionState {
  return {
    lang: "en",
    languages: [],
    prompt: null,
    status: "idle",
    result: null,
    error: null,
    toast: null,
  };
}

/** Recording may start only when no request is in flight. */
export function canRecord(state: SessionState): boolean {
  return state.status !== "processing";
}

export function withLanguages(state: SessionState, languages: string[]): SessionState {
  const lang = languages.includes(state.lang) ? state.lang : languages[0] ?? state.lang;
  return { ...state, languages, lang };
}

/** Selecting the current language is a no-op; a new one clears the boxes. */
export function switchLanguage(state: SessionState, code: string): SessionState {
  if (!state.languages.includes(code) || code === state.lang) {
    return state;
  }
  return {
    ...state,
    lang: code,
    prompt: null,
    result: null,
    error: null,
    status: "idle",
    toast: null,
  };
}

export function recordingStarted(state: SessionState): SessionState {
  return { ...state, status: "recording", error: null, toast: null };
}

export function processingStarted(state: SessionState): SessionState {
  return { ...state, status: "processing", error: null };
}

export function processSucceeded(state: SessionState, result: ProcessResponse): SessionState {
  return { ...state, status: "done", result, error: null };
}

export function processFailed(state: SessionState, error: UiError): SessionState {
  return { ...state, status: "error", error };
}

export function micDenied(state: SessionState): SessionState {
  return {
    ...state,
    status: "error",
    error: {
      kind: "mic",
      message: "Microphone access was denied. Allow it in the browser and try again.",
      retryable: false,
    },
  };
}

export function promptFetched(state: SessionState, prompt: Prompt): SessionState {
  return { ...state, prompt, toast: null };
}

export function promptFetchFailed(state: SessionState, message: string): SessionState {
  return { ...state, toast: message };
}

/** Badge emphasis: more removed words means a hotter color class. */
export function countSeverity(count: number): "none" | "low" | "mid" | "high" {
  if (count === 0) return "none";
  if (count <= 2) return "low";
  if (count <= 5) return "mid";
  return "high";
}
