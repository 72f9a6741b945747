import { describe, expect, it } from "vitest";

import { Api, ApiError, type ProcessResponse } from "../src/api.js";
import type { Capture } from "../src/audio.js";
import { MicDeniedError } from "../src/audio.js";
import { App } from "../src/controller.js";

const RESULT: ProcessResponse = {
  raw_text: "I um want to go",
  fluent_text: "I want to go",
  tokens: [],
  labels: [],
  spans: [],
  utterance_type: "Filler",
  disfluency_count: 1,
  raw_audio_url: "/api/audio/r",
  fluent_audio_url: "/api/audio/f",
  timings: {},
};

interface StubOptions {
  processImpl?: (wav: Blob, lang: string) => Promise<ProcessResponse>;
  captureImpl?: () => Promise<Capture>;
}

function makeApp(opts: StubOptions = {}) {
  const processCalls: string[] = [];
  const api = new Api("http://srv");
  api.languages = async () => ["en", "hi"];
  api.topic = async (lang: string) => ({
    id: `${lang}-1`, lang, category: "c", text: `prompt ${lang}`,
  });
  api.process =
    opts.processImpl ??
    (async (_wav, lang) => {
      processCalls.push(lang);
      return RESULT;
    });
  const capture =
    opts.captureImpl ??
    (async () => ({ stop: async () => new Blob([new Uint8Array(8)]) }));
  return { app: new App(api, capture), processCalls };
}

describe("record flow", () => {
  it("runs idle -> recording -> processing -> done", async () => {
    const { app } = makeApp();
    await app.init();
    const statuses: string[] = [];
    app.subscribe((s) => statuses.push(s.status));
    await app.toggleRecord();
    await app.toggleRecord();
    expect(statuses).toEqual(["idle", "recording", "processing", "done"]);
    expect(app.state.result).toEqual(RESULT);
  });

  it("blocks concurrent submissions while one is in flight", async () => {
    let resolveProcess!: (r: ProcessResponse) => void;
    const { app, processCalls } = makeApp({
      processImpl: (_wav, lang) => {
        processCalls.push(lang);
        return new Promise((resolve) => { resolveProcess = resolve; });
      },
    });
    await app.init();
    await app.toggleRecord();            // start recording
    const submission = app.toggleRecord(); // stop -> processing (hangs)
    await Promise.resolve();
    expect(app.state.status).toBe("processing");

    await app.toggleRecord();            // must be ignored while in flight
    await app.toggleRecord();
    expect(processCalls.length).toBe(1);
    expect(app.state.status).toBe("processing");

    resolveProcess(RESULT);
    await submission;
    expect(app.state.status).toBe("done");
    expect(processCalls.length).toBe(1);
  });

  it("sends the selected language with the upload", async () => {
    const { app, processCalls } = makeApp();
    await app.init();
    app.selectLanguage("hi");
    await app.toggleRecord();
    await app.toggleRecord();
    expect(processCalls).toEqual(["hi"]);
  });

  it("surfaces mic denial as a persistent hint", async () => {
    const { app } = makeApp({
      captureImpl: async () => { throw new MicDeniedError("denied"); },
    });
    await app.init();
    await app.toggleRecord();
    expect(app.state.status).toBe("error");
    expect(app.state.error?.kind).toBe("mic");
    expect(app.state.error?.retryable).toBe(false);
  });

  it("maps 502 responses to stage-tagged retryable errors", async () => {
    const { app } = makeApp({
      processImpl: async () => {
        throw new ApiError("backend_failure: boom", "pipeline", "asr");
      },
    });
    await app.init();
    await app.toggleRecord();
    await app.toggleRecord();
    expect(app.state.status).toBe("error");
    expect(app.state.error?.stage).toBe("asr");
    expect(app.state.error?.retryable).toBe(true);
  });

  it("allows a new recording after an error", async () => {
    const { app } = makeApp({
      processImpl: async () => { throw new ApiError("down", "network"); },
    });
    await app.init();
    await app.toggleRecord();
    await app.toggleRecord();
    expect(app.state.status).toBe("error");
    await app.toggleRecord();
    expect(app.state.status).toBe("recording");
  });
});

describe("topics and languages", () => {
  it("loads the language list on init", async () => {
    const { app } = makeApp();
    await app.init();
    expect(app.state.languages).toEqual(["en", "hi"]);
  });

  it("fetches a topic for the current language", async () => {
    const { app } = makeApp();
    await app.init();
    app.selectLanguage("hi");
    await app.fetchTopic();
    expect(app.state.prompt?.text).toBe("prompt hi");
  });

  it("keeps the previous prompt when a topic fetch fails", async () => {
    const { app } = makeApp();
    await app.init();
    await app.fetchTopic();
    const before = app.state.prompt;
    app.api.topic = async () => { throw new ApiError("offline", "network"); };
    await app.fetchTopic();
    expect(app.state.prompt).toBe(before);
    expect(app.state.toast).not.toBeNull();
  });

  it("clears the view model on language switch", async () => {
    const { app } = makeApp();
    await app.init();
    await app.toggleRecord();
    await app.toggleRecord();
    expect(app.state.result).not.toBeNull();
    app.selectLanguage("hi");
    expect(app.state.result).toBeNull();
    expect(app.state.status).toBe("idle");
  });
});
