/**
 * Visitor-facing chat page.
 *
 * Renders a transcript of user and bot turns, asks after each real
 * answer whether it helped, and offers a related link when it did not.
 */

import { ApiError, ChatReply, sendChat, sendUnsatisfied } from "./api.js";
import { button, clear, el } from "./dom.js";

export const REPHRASE_PROMPT =
  "That does not look like a full question. Please rephrase it.";
export const NO_LINK_TEXT = "I could not find a helpful link either.";

function addTurn(
  transcript: HTMLElement,
  who: "user" | "bot",
  text: string,
): HTMLElement {
  const turn = el("div", `turn ${who}`, text);
  transcript.appendChild(turn);
  return turn;
}

function spellingText(reply: ChatReply): string {
  const issue = (reply.issues ?? [])[0];
  if (!issue) {
    return REPHRASE_PROMPT;
  }
  return `I do not recognise "${issue.word}". Did you mean: ${issue.suggestions.join(", ")}?`;
}

function askSatisfaction(
  transcript: HTMLElement,
  question: string,
  answer: string,
): void {
  const prompt = el("div", "satisfaction");
  prompt.appendChild(el("span", "", "Was your question answered?"));
  prompt.appendChild(
    button("Yes", "satisfied-yes", () => {
      prompt.remove();
    }),
  );
  prompt.appendChild(
    button("No", "satisfied-no", () => {
      prompt.remove();
      sendUnsatisfied(question, answer)
        .then((result) => {
          if (result.link) {
            const turn = addTurn(transcript, "bot", "This link might help: ");
            const anchor = el("a", "help-link", result.link);
            anchor.href = result.link;
            turn.appendChild(anchor);
          } else {
            addTurn(transcript, "bot", NO_LINK_TEXT);
          }
        })
        .catch((err: unknown) => {
          const message =
            err instanceof ApiError ? err.message : "Something went wrong.";
          addTurn(transcript, "bot", message);
        });
    }),
  );
  transcript.appendChild(prompt);
}

function renderReply(
  transcript: HTMLElement,
  question: string,
  reply: ChatReply,
): void {
  if (reply.status === "spelling") {
    addTurn(transcript, "bot", spellingText(reply));
    return;
  }
  if (reply.status === "invalid_sentence") {
    addTurn(transcript, "bot", REPHRASE_PROMPT);
    return;
  }
  const answer = reply.answer ?? "";
  addTurn(transcript, "bot", answer);
  askSatisfaction(transcript, question, answer);
}

export function mountChatPage(root: HTMLElement): void {
  clear(root);
  const banner = el("div", "banner hidden");
  const transcript = el("div", "transcript");
  addTurn(transcript, "bot", "Hi, How can I help you?");

  const form = el("form", "chat-form");
  const input = el("input");
  input.type = "text";
  input.placeholder = "Ask a question about admissions";
  const submit = el("button", "", "Send");
  submit.type = "submit";
  form.appendChild(input);
  form.appendChild(submit);

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const question = input.value.trim();
    if (!question) {
      return;
    }
    banner.classList.add("hidden");
    addTurn(transcript, "user", question);
    sendChat(question)
      .then((reply) => {
        input.value = "";
        renderReply(transcript, question, reply);
      })
      .catch((err: unknown) => {
        const message =
          err instanceof ApiError ? err.message : "Something went wrong.";
        banner.textContent = message;
        banner.classList.remove("hidden");
      });
  });

  root.appendChild(el("h2", "", "Ask the admissions chatbot"));
  root.appendChild(banner);
  root.appendChild(transcript);
  root.appendChild(form);
}
