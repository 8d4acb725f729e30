/** Browser entry point: wires the palette, block workspace, explanation
 * panel, and canvas playback to the service. */

import { ApiClient } from "./api.js";
import { submitAndDisplay, type View } from "./app.js";
import { renderScene } from "./canvas.js";
import {
  buildPalette,
  renderBlockLabel,
  type BlockInstance,
  type BlockKind,
  type BlockPalette,
} from "./palette.js";
import { PlaybackState, renderActionCaption } from "./playback.js";
import type { DomainDetail, ProblemDetail } from "./types.js";

const client = new ApiClient("");

interface UiState {
  domain: DomainDetail | null;
  problem: ProblemDetail | null;
  palette: BlockPalette | null;
  blocks: BlockInstance[];
  sessionId: string | null;
  playback: PlaybackState | null;
  highlighted: number | null;
}

const state: UiState = {
  domain: null,
  problem: null,
  palette: null,
  blocks: [],
  sessionId: null,
  playback: null,
  highlighted: null,
};

const el = (id: string) => document.getElementById(id)!;

function renderPalette(): void {
  const host = el("palette");
  host.textContent = "";
  for (const kind of state.palette?.blocks ?? []) {
    const button = document.createElement("button");
    button.textContent = renderBlockLabel(kind, kind.params.map((p) => `<${p.name}>`));
    button.disabled = kind.disabled;
    if (kind.disabled && kind.disabledReason) button.title = kind.disabledReason;
    button.onclick = () => {
      state.blocks.push({ action: kind.action, args: kind.params.map((p) => p.choices[0]) });
      renderBlocks();
    };
    host.appendChild(button);
  }
}

function renderBlocks(): void {
  const host = el("blocks");
  host.textContent = "";
  state.blocks.forEach((block, index) => {
    const kind = state.palette!.blocks.find((b) => b.action === block.action)!;
    const row = document.createElement("div");
    row.className = "block" + (state.highlighted === index ? " failing" : "");
    const name = document.createElement("span");
    name.textContent = `${index + 1}. ${block.action}`;
    row.appendChild(name);
    kind.params.forEach((param: BlockKind["params"][number], i: number) => {
      const select = document.createElement("select");
      for (const choice of param.choices) {
        const option = document.createElement("option");
        option.value = choice;
        option.textContent = choice;
        option.selected = choice === block.args[i];
        select.appendChild(option);
      }
      select.onchange = () => {
        block.args[i] = select.value;
      };
      row.appendChild(select);
    });
    const remove = document.createElement("button");
    remove.textContent = "✕";
    remove.onclick = () => {
      state.blocks.splice(index, 1);
      renderBlocks();
    };
    row.appendChild(remove);
    host.appendChild(row);
  });
}

const view: View = {
  showNotice(message) {
    el("panel").textContent = message;
  },
  showExplanation(paragraph, stepIndex, repeat) {
    state.highlighted = stepIndex;
    renderBlocks();
    el("panel").textContent = repeat ? `${paragraph} (explained before)` : paragraph;
  },
  startPlayback(playback) {
    state.highlighted = null;
    state.playback = playback;
    el("panel").textContent = "plan is valid — playing back";
    animate();
  },
  showError(message) {
    el("panel").textContent = `error: ${message}`;
  },
  setBusy(busy) {
    (el("submit") as HTMLButtonElement).disabled = busy;
  },
};

let lastFrame = 0;

function animate(): void {
  const canvas = el("scene") as HTMLCanvasElement;
  const ctx = canvas.getContext("2d")!;
  lastFrame = performance.now();
  const frame = (now: number) => {
    const playback = state.playback;
    if (!playback || !state.problem || !state.domain) return;
    playback.advance((now - lastFrame) / 1000);
    lastFrame = now;
    const scene = playback.scene();
    const segment = playback.trace.segments[scene.segmentIndex];
    renderScene(
      ctx,
      state.problem.workspace,
      scene,
      { widthPx: canvas.width, heightPx: canvas.height },
      segment ? renderActionCaption(segment.action, state.domain) : "",
    );
    state.highlighted = scene.highlightedStep;
    renderBlocks();
    if (!playback.finished) requestAnimationFrame(frame);
  };
  requestAnimationFrame(frame);
}

async function loadProblem(domainId: string, problemId: string): Promise<void> {
  try {
    state.domain = await client.getDomain(domainId);
    state.problem = await client.getProblem(domainId, problemId);
    state.palette = buildPalette(state.domain, problemId);
    state.blocks = [];
    state.highlighted = null;
    el("goal").textContent = `Goal: ${state.problem.goal}`;
    renderPalette();
    renderBlocks();
    const canvas = el("scene") as HTMLCanvasElement;
    const idle = new PlaybackState(
      { status: "complete", speed: 0.5, segments: [] },
      state.problem.workspace,
    );
    renderScene(canvas.getContext("2d")!, state.problem.workspace, idle.scene(), {
      widthPx: canvas.width,
      heightPx: canvas.height,
    });
  } catch (err) {
    el("panel").textContent = `failed to load ${domainId}/${problemId}: ${err}`;
  }
}

async function init(): Promise<void> {
  const domains = await client.listDomains();
  const picker = el("picker") as HTMLSelectElement;
  for (const d of domains) {
    for (const p of d.problems) {
      const option = document.createElement("option");
      option.value = `${d.id}/${p.id}`;
      option.textContent = `${d.title} — ${p.id}`;
      picker.appendChild(option);
    }
  }
  picker.onchange = () => {
    const [domainId, problemId] = picker.value.split("/");
    void loadProblem(domainId, problemId);
  };
  state.sessionId = (await client.createSession()).session_id;
  (el("submit") as HTMLButtonElement).onclick = () => {
    if (!state.problem) return;
    state.playback = null;
    void submitAndDisplay(
      client,
      view,
      state.sessionId!,
      state.problem.domain,
      state.problem.id,
      state.blocks,
      state.problem.workspace,
    );
  };
  const first = domains[0];
  if (first && first.problems[0]) {
    picker.value = `${first.id}/${first.problems[0].id}`;
    await loadProblem(first.id, first.problems[0].id);
  }
}

void init();
