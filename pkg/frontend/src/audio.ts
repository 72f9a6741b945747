/** Microphone capture and client-side conversion to 16 kHz mono PCM16 WAV.
 *
 * The server's canonical format is one WAV shape, so the client does the
 * downmix/resample before upload. Resampling is plain linear interpolation,
 * kept as a pure function so it is testable outside the browser.
 */

export const TARGET_RATE = 16000;

export function downmixToMono(channels: Float32Array[]): Float32Array {
  if (channels.length === 0) return new Float32Array(0);
  if (channels.length === 1) return channels[0];
  const n = channels[0].length;
  const out = new Float32Array(n);
  for (let i = 0; i < n; i++) {
    let sum = 0;
    for (const ch of channels) sum += ch[i] ?? 0;
    out[i] = sum / channels.length;
  }
  return out;
}

export function resampleLinear(
  samples: Float32Array,
  srcRate: number,
  dstRate: number,
): Float32Array {
  if (srcRate === dstRate || samples.length === 0) return samples;
  const n = Math.round((samples.length * dstRate) / srcRate);
  const out = new Float32Array(n);
  const step = srcRate / dstRate;
  for (let i = 0; i < n; i++) {
    const pos = i * step;
    const lo = Math.floor(pos);
    const hi = Math.min(lo + 1, samples.length - 1);
    const frac = pos - lo;
    out[i] = samples[lo] * (1 - frac) + samples[hi] * frac;
  }
  return out;
}

/** Serialize float samples in [-1, 1] as a PCM16 mono WAV. */
export function encodeWavPcm16(samples: Float32Array, sampleRate: number): ArrayBuffer {
  const data = new ArrayBuffer(44 + samples.length * 2);
  const view = new DataView(data);
  const writeTag = (offset: number, tag: string) => {
    for (let i = 0; i < tag.length; i++) view.setUint8(offset + i, tag.charCodeAt(i));
  };
  writeTag(0, "RIFF");
  view.setUint32(4, 36 + samples.length * 2, true);
  writeTag(8, "WAVE");
  writeTag(12, "fmt ");
  view.setUint32(16, 16, true);
  view.setUint16(20, 1, true); // PCM
  view.setUint16(22, 1, true); // mono
  view.setUint32(24, sampleRate, true);
  view.setUint32(28, sampleRate * 2, true);
  view.setUint16(32, 2, true);
  view.setUint16(34, 16, true);
  writeTag(36, "data");
  view.setUint32(40, samples.length * 2, true);
  for (let i = 0; i < samples.length; i++) {
    const clamped = Math.max(-1, Math.min(1, samples[i]));
    view.setInt16(44 + i * 2, Math.round(clamped * 32767), true);
  }
  return data;
}

export class MicDeniedError extends Error {}

export interface Capture {
  /** Stop recording and return the 16 kHz mono PCM16 WAV. */
  stop(): Promise<Blob>;
}

/** Start a microphone capture; resolves once the recorder is live. */
export async function startCapture(): Promise<Capture> {
  let stream: MediaStream;
  try {
    stream = await navigator.mediaDevices.getUserMedia({ audio: true });
  } catch (err) {
    throw new MicDeniedError(String(err));
  }
  const recorder = new MediaRecorder(stream);
  const chunks: Blob[] = [];
  recorder.ondataavailable = (e) => {
    if (e.data && e.data.size > 0) chunks.push(e.data);
  };
  recorder.start();

  return {
    stop: () =>
      new Promise<Blob>((resolve, reject) => {
        recorder.onstop = async () => {
          stream.getTracks().forEach((t) => t.stop());
          try {
            const recorded = new Blob(chunks, { type: recorder.mimeType });
            resolve(await toWav(recorded));
          } catch (err) {
            reject(err);
          }
        };
        recorder.stop();
      }),
  };
}

async function toWav(recorded: Blob): Promise<Blob> {
  const ctx = new AudioContext();
  try {
    const decoded = await ctx.decodeAudioData(await recorded.arrayBuffer());
    const channels: Float32Array[] = [];
    for (let c = 0; c < decoded.numberOfChannels; c++) {
      channels.push(decoded.getChannelData(c));
    }
    const mono = downmixToMono(channels);
    const resampled = resampleLinear(mono, decoded.sampleRate, TARGET_RATE);
    return new Blob([encodeWavPcm16(resampled, TARGET_RATE)], { type: "audio/wav" });
  } finally {
    void ctx.close();
  }
}
