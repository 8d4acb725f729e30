/** The tutoring loop: serialize the workspace blocks, submit, and either
 * show the explanation (highlighting the failing block) or poll the
 * refinement job and hand a playback state to the view. */

import { ApiClient } from "./api.js";
import { blocksToPlanText, type BlockInstance } from "./palette.js";
import { PlaybackState } from "./playback.js";
import type { Workspace } from "./types.js";

export interface View {
  /** Client-side notices (e.g. empty plan); never clears the workspace. */
  showNotice(message: string): void;
  /** Explanation paragraph plus which block (plan step) to outline;
   * stepIndex is null for goal failures with no failing step. */
  showExplanation(paragraph: string, stepIndex: number | null, repeat: boolean): void;
  /** A completed trace, ready to animate. */
  startPlayback(playback: PlaybackState): void;
  /** Refinement or transport failures; the workspace is preserved. */
  showError(message: string): void;
  setBusy(busy: boolean): void;
}

export async function submitAndDisplay(
  client: ApiClient,
  view: View,
  sessionId: string,
  domainId: string,
  problemId: string,
  blocks: BlockInstance[],
  workspace: Workspace,
): Promise<void> {
  if (blocks.length === 0) {
    view.showNotice("plan is empty — add at least one block");
    return;
  }
  view.setBusy(true);
  try {
    const submission = await client.submitPlan(
      sessionId,
      problemId,
      domainId,
      blocksToPlanText(blocks),
    );
    if (submission.verdict !== "valid") {
      const step = submission.explanation?.step_index;
      view.showExplanation(
        submission.paragraph ?? "the plan is not valid",
        step === undefined ? null : step,
        submission.repeat,
      );
      return;
    }
    const job = await client.pollJob(submission.job_id!);
    if (job.state === "failed" || !job.trace || job.trace.status !== "complete") {
      view.showError(job.message ?? "refinement failed");
      return;
    }
    view.startPlayback(new PlaybackState(job.trace, workspace));
  } catch (err) {
    view.showError(err instanceof Error ? err.message : String(err));
  } finally {
    view.setBusy(false);
  }
}
