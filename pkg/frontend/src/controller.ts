/** Orchestrates recording, upload and state transitions.
 *
 * One /api/process request may be in flight at a time; toggleRecord is a
 * no-op while processing. All disfluency information is rendered from the
 * server response; nothing is computed client-side.
 */

import { Api, ApiError } from "./api.js";
import { Capture, MicDeniedError } from "./audio.js";
import {
  SessionState,
  canRecord,
  initialState,
  micDenied,
  processFailed,
  processSucceeded,
  processingStarted,
  promptFetchFailed,
  promptFetched,
  recordingStarted,
  switchLanguage,
  withLanguages,
} from "./state.js";

export type CaptureFactory = () => Promise<Capture>;
export type Listener = (state: SessionState) => void;

export class App {
  state: SessionState = initialState();
  private capture: Capture | null = null;
  private listeners: Listener[] = [];

  constructor(
    readonly api: Api,
    private startCapture: CaptureFactory,
  ) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
    listener(this.state);
  }

  private set(state: SessionState): void {
    this.state = state;
    for (const listener of this.listeners) listener(state);
  }

  /** Populate the language dropdown from the server. */
  async init(): Promise<void> {
    try {
      const languages = await this.api.languages();
      this.set(withLanguages(this.state, languages));
    } catch (err) {
      this.set(promptFetchFailed(this.state, `cannot load languages: ${err}`));
    }
  }

  selectLanguage(code: string): void {
    this.set(switchLanguage(this.state, code));
  }

  async fetchTopic(): Promise<void> {
    try {
      const prompt = await this.api.topic(this.state.lang);
      this.set(promptFetched(this.state, prompt));
    } catch {
      // non-blocking: keep the previous prompt visible
      this.set(promptFetchFailed(this.state, "Could not fetch a topic; try again."));
    }
  }

  /** Start recording, or stop-and-submit when already recording. */
  async toggleRecord(): Promise<void> {
    if (this.state.status === "recording") {
      await this.stopAndSubmit();
      return;
    }
    if (!canRecord(this.state)) {
      return; // a submission is in flight
    }
    try {
      this.capture = await this.startCapture();
      this.set(recordingStarted(this.state));
    } catch (err) {
      if (err instanceof MicDeniedError) {
        this.set(micDenied(this.state));
      } else {
        this.set(
          processFailed(this.state, {
            kind: "mic",
            message: `recording failed: ${err}`,
            retryable: true,
          }),
        );
      }
    }
  }

  private async stopAndSubmit(): Promise<void> {
    const capture = this.capture;
    this.capture = null;
    if (!capture) return;
    this.set(processingStarted(this.state));
    let wav: Blob;
    try {
      wav = await capture.stop();
    } catch (err) {
      this.set(
        processFailed(this.state, {
          kind: "mic",
          message: `could not read the recording: ${err}`,
          retryable: true,
        }),
      );
      return;
    }
    try {
      const result = await this.api.process(wav, this.state.lang);
      this.set(processSucceeded(this.state, result));
    } catch (err) {
      const apiErr = err instanceof ApiError
        ? err
        : new ApiError(String(err), "network");
      this.set(
        processFailed(this.state, {
          kind: apiErr.kind === "request" ? "pipeline" : apiErr.kind,
          message: apiErr.message,
          stage: apiErr.stage,
          retryable: true,
        }),
      );
    }
  }
}
