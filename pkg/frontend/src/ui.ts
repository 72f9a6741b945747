/** DOM bindings: render the session state into the page.
 *
 * Every value in the result boxes comes verbatim from the server response;
 * the count badge is never computed client-side.
 */

import type { Api } from "./api.js";
import { SessionState, canRecord, countSeverity } from "./state.js";

export interface Elements {
  languageSelect: HTMLSelectElement;
  countBadge: HTMLElement;
  topicButton: HTMLButtonElement;
  promptText: HTMLElement;
  promptCategory: HTMLElement;
  recordButton: HTMLButtonElement;
  sourceText: HTMLElement;
  sourceAudio: HTMLAudioElement;
  targetText: HTMLElement;
  typeBadge: HTMLElement;
  targetAudio: HTMLAudioElement;
  errorBanner: HTMLElement;
  toast: HTMLElement;
}

export function grabElements(root: Document): Elements {
  const get = <T extends HTMLElement>(id: string): T => {
    const el = root.getElementById(id);
    if (!el) throw new Error(`missing element #${id}`);
    return el as T;
  };
  return {
    languageSelect: get<HTMLSelectElement>("language"),
    countBadge: get("count-badge"),
    topicButton: get<HTMLButtonElement>("topic-button"),
    promptText: get("prompt-text"),
    promptCategory: get("prompt-category"),
    recordButton: get<HTMLButtonElement>("record-button"),
    sourceText: get("source-text"),
    sourceAudio: get<HTMLAudioElement>("source-audio"),
    targetText: get("target-text"),
    typeBadge: get("type-badge"),
    targetAudio: get<HTMLAudioElement>("target-audio"),
    errorBanner: get("error-banner"),
    toast: get("toast"),
  };
}

const RECORD_LABELS: Record<string, string> = {
  idle: "Start recording",
  recording: "Stop and analyze",
  processing: "Processing...",
  done: "Record again",
  error: "Start recording",
};

export function render(state: SessionState, el: Elements, api: Api): void {
  // language dropdown mirrors the server list exactly
  const current = [...el.languageSelect.options].map((o) => o.value);
  if (current.join(",") !== state.languages.join(",")) {
    el.languageSelect.innerHTML = "";
    for (const code of state.languages) {
      const option = el.languageSelect.ownerDocument.createElement("option");
      option.value = code;
      option.textContent = code;
      el.languageSelect.appendChild(option);
    }
  }
  el.languageSelect.value = state.lang;

  el.promptText.textContent = state.prompt ? state.prompt.text : "";
  el.promptCategory.textContent = state.prompt ? state.prompt.category : "";

  el.recordButton.textContent = RECORD_LABELS[state.status];
  el.recordButton.disabled = !canRecord(state);
  el.recordButton.classList.toggle("recording", state.status === "recording");

  const result = state.result;
  el.sourceText.textContent = result ? result.raw_text : "";
  el.targetText.textContent = result ? result.fluent_text : "";
  el.typeBadge.textContent = result ? result.utterance_type : "";
  el.countBadge.textContent = result ? String(result.disfluency_count) : "–";
  el.countBadge.dataset.severity = result
    ? countSeverity(result.disfluency_count)
    : "none";

  const sourceSrc = result ? api.audioUrl(result.raw_audio_url) : "";
  const targetSrc = result ? api.audioUrl(result.fluent_audio_url) : "";
  if (el.sourceAudio.getAttribute("src") !== sourceSrc) {
    el.sourceAudio.setAttribute("src", sourceSrc);
  }
  if (el.targetAudio.getAttribute("src") !== targetSrc) {
    el.targetAudio.setAttribute("src", targetSrc);
  }

  if (state.error) {
    const stage = state.error.stage ? ` [stage: ${state.error.stage}]` : "";
    const retry = state.error.retryable ? " You can try again." : "";
    el.errorBanner.textContent = `${state.error.kind} error${stage}: ${state.error.message}.${retry}`;
    el.errorBanner.hidden = false;
  } else {
    el.errorBanner.textContent = "";
    el.errorBanner.hidden = true;
  }

  el.toast.textContent = state.toast ?? "";
  el.toast.hidden = state.toast === null;
}
