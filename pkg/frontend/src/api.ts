/**
 * Typed client for the chatbot's JSON API.
 *
 * Every view goes through this module; nothing here interprets the
 * data beyond its shape, so the UI stays free of business logic.
 */

export interface SpellingIssue {
  word: string;
  position: number;
  suggestions: string[];
}

export interface GateReport {
  tokens: string[];
  tags: string[][];
  has_noun: boolean;
  has_verb: boolean;
  valid: boolean;
}

export interface ChatReply {
  status: "answer" | "no_answer" | "spelling" | "invalid_sentence";
  answer?: string;
  issues?: SpellingIssue[];
  gate?: GateReport;
}

export interface InfoItem {
  id: number;
  question: string;
  answer: string;
  keywords: string[];
}

export interface InfoFields {
  question: string;
  answer: string;
  keywords: string[];
}

export interface LogItem {
  id: number;
  question: string;
  answer: string;
  label: string | null;
}

export interface FeedbackItem {
  id: number;
  mark: number;
  message: string;
}

export interface OverallScore {
  mean: number;
  count: number;
}

export interface SessionGrant {
  token: string;
  expires: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function request<T>(
  path: string,
  init: RequestInit = {},
  token?: string,
): Promise<T> {
  const headers: Record<string, string> = {};
  if (init.body !== undefined) {
    headers["Content-Type"] = "application/json";
  }
  if (token !== undefined) {
    headers["Authorization"] = `Bearer ${token}`;
  }
  let response: Response;
  try {
    response = await fetch(path, { ...init, headers });
  } catch {
    throw new ApiError(0, "network", "Could not reach the server.");
  }
  let body: unknown = {};
  try {
    body = await response.json();
  } catch {
    body = {};
  }
  if (!response.ok) {
    const envelope = body as { error?: string; message?: string };
    throw new ApiError(
      response.status,
      envelope.error ?? "error",
      envelope.message ?? response.statusText,
    );
  }
  return body as T;
}

function post(payload: unknown): RequestInit {
  return { method: "POST", body: JSON.stringify(payload) };
}

export function sendChat(question: string): Promise<ChatReply> {
  return request<ChatReply>("/api/chat", post({ question }));
}

export function sendUnsatisfied(
  question: string,
  answer: string,
): Promise<{ link?: string }> {
  return request<{ link?: string }>(
    "/api/chat/unsatisfied",
    post({ question, answer }),
  );
}

export function sendFeedback(
  mark: number,
  message: string,
): Promise<{ id: number }> {
  return request<{ id: number }>("/api/feedback", post({ mark, message }));
}

export function login(
  username: string,
  password: string,
): Promise<SessionGrant> {
  return request<SessionGrant>("/api/login", post({ username, password }));
}

export function listInfo(token: string): Promise<{ items: InfoItem[] }> {
  return request<{ items: InfoItem[] }>("/api/admin/info", {}, token);
}

export function addInfo(
  token: string,
  fields: InfoFields,
): Promise<{ id: number }> {
  return request<{ id: number }>("/api/admin/info", post(fields), token);
}

export function updateInfo(
  token: string,
  id: number,
  fields: Partial<InfoFields>,
): Promise<InfoItem> {
  return request<InfoItem>(
    `/api/admin/info/${id}`,
    { method: "PUT", body: JSON.stringify(fields) },
    token,
  );
}

export function deleteInfo(
  token: string,
  id: number,
): Promise<{ deleted: number }> {
  return request<{ deleted: number }>(
    `/api/admin/info/${id}`,
    { method: "DELETE" },
    token,
  );
}

export function listLogs(token: string): Promise<{ items: LogItem[] }> {
  return request<{ items: LogItem[] }>("/api/admin/logs", {}, token);
}

export function deleteLog(
  token: string,
  id: number,
): Promise<{ deleted: number }> {
  return request<{ deleted: number }>(
    `/api/admin/logs/${id}`,
    { method: "DELETE" },
    token,
  );
}

export function listFeedback(
  token: string,
): Promise<{ items: FeedbackItem[] }> {
  return request<{ items: FeedbackItem[] }>("/api/admin/feedback", {}, token);
}

export function overallFeedback(token: string): Promise<OverallScore> {
  return request<OverallScore>("/api/admin/feedback/overall", {}, token);
}

export function deleteFeedback(
  token: string,
  id: number,
): Promise<{ deleted: number }> {
  return request<{ deleted: number }>(
    `/api/admin/feedback/${id}`,
    { method: "DELETE" },
    token,
  );
}
