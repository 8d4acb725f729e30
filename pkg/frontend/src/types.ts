/** Wire types for the plan-tutoring service's JSON endpoints. */

export interface ProblemSummary {
  id: string;
  goal: string;
}

export interface DomainSummary {
  id: string;
  title: string;
  blurb: string;
  problems: ProblemSummary[];
}

export interface ActionParam {
  name: string;
  type: string;
}

export interface ActionDetail {
  name: string;
  /** Slot template like "pick up {0} with {1}", or the bare action name. */
  display: string;
  params: ActionParam[];
}

export interface ProblemChoices {
  id: string;
  goal: string;
  /** action name -> per-parameter lists of admissible object names */
  choices: Record<string, string[][]>;
}

export interface DomainDetail {
  id: string;
  title: string;
  blurb: string;
  actions: ActionDetail[];
  problems: ProblemChoices[];
  /** object name -> friendly phrase, e.g. gl -> "the left gripper" */
  aliases: Record<string, string>;
}

export interface WorkspaceObject {
  radius: number;
  position: [number, number] | null;
}

export interface WorkspaceGripper {
  radius: number;
  position: [number, number];
}

export interface Workspace {
  bounds: [number, number, number, number];
  obstacles: [number, number, number][];
  objects: Record<string, WorkspaceObject>;
  locations: Record<string, [number, number]>;
  grippers: Record<string, WorkspaceGripper>;
}

export interface ProblemDetail {
  id: string;
  domain: string;
  goal: string;
  objects: ActionParam[];
  workspace: Workspace;
  choices: Record<string, string[][]>;
}

export interface SessionOut {
  session_id: string;
  created_at: string;
}

export interface LiteralOut {
  predicate: string;
  args: string[];
  positive: boolean;
}

export interface ExplanationOut {
  kind: "precondition" | "goal";
  contrast: string[];
  step_index?: number;
  action?: string;
  fact?: { schema: string; literal: LiteralOut };
  violated?: LiteralOut;
  unmet_goals?: LiteralOut[];
}

export interface SubmissionOut {
  verdict: "valid" | "precondition-failure" | "goal-failure";
  report: Record<string, unknown>;
  explanation: ExplanationOut | null;
  paragraph: string | null;
  repeat: boolean;
  job_id: string | null;
}

export interface TraceWaypoint {
  x: number;
  y: number;
  t: number;
}

export interface TraceSegment {
  step: number;
  action: string;
  mover: string;
  attached: string | null;
  waypoints: TraceWaypoint[];
}

export interface Trace {
  status: "complete" | "failed";
  speed: number;
  segments: TraceSegment[];
  failed_step?: number;
  reason?: string;
}

export interface JobOut {
  id: string;
  state: "queued" | "running" | "done" | "failed";
  trace: Trace | null;
  message: string | null;
}

export interface ErrorBody {
  code: string;
  message: string;
  details: Record<string, unknown>;
}
