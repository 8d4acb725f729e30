/** Block palette: one block kind per action schema, with per-parameter
 * dropdowns restricted to the service's admissible object choices, plus
 * the lossless mapping between block sequences and plan text. */

import type { DomainDetail } from "./types.js";

export interface ParamSlot {
  name: string;
  type: string;
  /** Admissible object names, exactly as served; never widened client-side. */
  choices: string[];
}

export interface BlockKind {
  action: string;
  /** Slot template like "pick up {0} with {1}". */
  display: string;
  params: ParamSlot[];
  /** A block with an empty choice list can never form a legal step. */
  disabled: boolean;
  disabledReason: string | null;
}

export interface BlockPalette {
  domainId: string;
  problemId: string;
  blocks: BlockKind[];
}

/** One placed block in the workspace: an action with chosen arguments. */
export interface BlockInstance {
  action: string;
  args: string[];
}

export function buildPalette(domain: DomainDetail, problemId: string): BlockPalette {
  const problem = domain.problems.find((p) => p.id === problemId);
  if (!problem) {
    throw new Error(`domain ${domain.id} has no problem ${problemId}`);
  }
  const blocks = domain.actions.map((action) => {
    const perParam = problem.choices[action.name] ?? action.params.map(() => []);
    const params: ParamSlot[] = action.params.map((p, i) => ({
      name: p.name,
      type: p.type,
      choices: perParam[i] ?? [],
    }));
    const empty = params.find((p) => p.choices.length === 0);
    return {
      action: action.name,
      display: action.display,
      params,
      disabled: empty !== undefined,
      disabledReason: empty
        ? `no objects of type ${empty.type} are available for ${empty.name}`
        : null,
    };
  });
  return { domainId: domain.id, problemId, blocks };
}

/** Fill a block kind's display template with concrete arguments. */
export function renderBlockLabel(kind: Pick<BlockKind, "display">, args: string[]): string {
  return kind.display.replace(/\{(\d+)\}/g, (_, i) => args[Number(i)] ?? `{${i}}`);
}

/** Serialize the workspace block sequence to the plan wire format. */
export function blocksToPlanText(blocks: BlockInstance[]): string {
  return blocks.map((b) => `(${[b.action, ...b.args].join(" ")})`).join("\n");
}

/** Parse plan text back into blocks, enforcing the palette's dropdowns.
 * Inverse of blocksToPlanText for any sequence the UI can build. */
export function planTextToBlocks(text: string, palette: BlockPalette): BlockInstance[] {
  const blocks: BlockInstance[] = [];
  for (const rawLine of text.split("\n")) {
    const line = rawLine.split(";")[0].trim();
    if (!line) continue;
    const match = /^\(([^()]*)\)$/.exec(line);
    if (!match) {
      throw new Error(`not a plan step: ${rawLine.trim()}`);
    }
    const [action, ...args] = match[1].trim().split(/\s+/);
    const kind = palette.blocks.find((b) => b.action === action);
    if (!kind) {
      throw new Error(`unknown action: ${action}`);
    }
    if (args.length !== kind.params.length) {
      throw new Error(`${action} takes ${kind.params.length} arguments, got ${args.length}`);
    }
    args.forEach((arg, i) => {
      if (!kind.params[i].choices.includes(arg)) {
        throw new Error(`${arg} is not a legal ${kind.params[i].name} for ${action}`);
      }
    });
    blocks.push({ action, args });
  }
  return blocks;
}
