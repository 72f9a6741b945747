import { describe, expect, it } from "vitest";

import { Api, ApiError } from "../src/api.js";

function fakeFetch(handler: (url: string, init?: RequestInit) => Response) {
  const calls: Array<{ url: string; init?: RequestInit }> = [];
  const impl = (async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    calls.push({ url, init });
    return handler(url, init);
  }) as typeof fetch;
  return { impl, calls };
}

const json = (body: unknown, status = 200) =>
  new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });

describe("Api", () => {
  it("fetches the language list", async () => {
    const { impl, calls } = fakeFetch(() => json({ languages: ["en", "hi"] }));
    const api = new Api("http://srv", impl);
    expect(await api.languages()).toEqual(["en", "hi"]);
    expect(calls[0].url).toBe("http://srv/api/languages");
  });

  it("requests topics for the selected language", async () => {
    const { impl, calls } = fakeFetch(() =>
      json({ id: "hi-1", lang: "hi", category: "c", text: "t" }));
    const api = new Api("", impl);
    await api.topic("hi");
    expect(calls[0].url).toBe("/api/topic?lang=hi");
  });

  it("posts multipart audio with the language field", async () => {
    const { impl, calls } = fakeFetch(() =>
      json({
        raw_text: "", fluent_text: "", tokens: [], labels: [], spans: [],
        utterance_type: "Fluent", disfluency_count: 0,
        raw_audio_url: "/api/audio/a", fluent_audio_url: "/api/audio/b",
        timings: {},
      }));
    const api = new Api("http://srv", impl);
    await api.process(new Blob([new Uint8Array(4)]), "en");
    expect(calls[0].url).toBe("http://srv/api/process");
    const form = calls[0].init?.body as FormData;
    expect(form.get("lang")).toBe("en");
    expect(form.get("audio")).toBeInstanceOf(Blob);
  });

  it("maps 502 bodies to stage-tagged pipeline errors", async () => {
    const { impl } = fakeFetch(() =>
      json({ code: "backend_failure", message: "remote ASR returned 500",
             stage: "asr" }, 502));
    const api = new Api("", impl);
    const err = await api.process(new Blob([]), "en").catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.kind).toBe("pipeline");
    expect(err.stage).toBe("asr");
  });

  it("maps transport failures to network errors", async () => {
    const impl = (async () => {
      throw new TypeError("fetch failed");
    }) as unknown as typeof fetch;
    const api = new Api("", impl);
    const err = await api.languages().catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.kind).toBe("network");
  });

  it("maps plain 4xx to request errors", async () => {
    const { impl } = fakeFetch(() =>
      json({ code: "unsupported_language", message: "no such language" }, 400));
    const api = new Api("", impl);
    const err = await api.topic("fr").catch((e) => e);
    expect(err.kind).toBe("request");
  });

  it("builds audio URLs against the configured base", () => {
    const api = new Api("http://srv:8080");
    expect(api.audioUrl("/api/audio/abc")).toBe("http://srv:8080/api/audio/abc");
  });
});
