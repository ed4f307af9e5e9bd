import { beforeEach, describe, expect, it, vi } from "vitest";

import { mountChatPage, NO_LINK_TEXT, REPHRASE_PROMPT } from "../src/chat";
import { appRoot, flush, jsonResponse, query, queryAll, submitForm } from "./helpers";

function ask(question: string): void {
  query<HTMLInputElement>(".chat-form input").value = question;
  submitForm(".chat-form");
}

describe("chat page", () => {
  beforeEach(() => {
    vi.restoreAllMocks();
    mountChatPage(appRoot());
  });

  it("greets the visitor before any question", () => {
    const turns = queryAll(".turn.bot");
    expect(turns).toHaveLength(1);
    expect(turns[0].textContent).toBe("Hi, How can I help you?");
  });

  it("ignores a blank submission", () => {
    const fetchMock = vi.fn();
    vi.stubGlobal("fetch", fetchMock);
    ask("   ");
    expect(fetchMock).not.toHaveBeenCalled();
    expect(queryAll(".turn.user")).toHaveLength(0);
  });

  it("shows the question and the answer as visually distinct turns", async () => {
    const fetchMock = vi.fn().mockResolvedValueOnce(
      jsonResponse({ status: "answer", answer: "Yes, online." }),
    );
    vi.stubGlobal("fetch", fetchMock);
    ask("How can I apply?");
    await flush();

    const [url, init] = fetchMock.mock.calls[0];
    expect(url).toBe("/api/chat");
    expect(init.method).toBe("POST");
    expect(JSON.parse(init.body)).toEqual({ question: "How can I apply?" });

    const user = queryAll(".turn.user");
    const bots = queryAll(".turn.bot");
    expect(user).toHaveLength(1);
    expect(user[0].textContent).toBe("How can I apply?");
    expect(bots[1].textContent).toBe("Yes, online.");
    expect(user[0].className).not.toBe(bots[1].className);
    expect(query<HTMLInputElement>(".chat-form input").value).toBe("");
  });

  it("asks whether the answer helped and lets Yes dismiss the prompt", async () => {
    const fetchMock = vi.fn().mockResolvedValueOnce(
      jsonResponse({ status: "answer", answer: "Yes." }),
    );
    vi.stubGlobal("fetch", fetchMock);
    ask("Do I need a visa?");
    await flush();

    expect(query(".satisfaction").textContent).toContain(
      "Was your question answered?",
    );
    query<HTMLButtonElement>(".satisfied-yes").click();
    await flush();
    expect(document.querySelector(".satisfaction")).toBeNull();
    expect(fetchMock).toHaveBeenCalledTimes(1);
  });

  it("offers a related link when the visitor says No", async () => {
    const fetchMock = vi
      .fn()
      .mockResolvedValueOnce(jsonResponse({ status: "answer", answer: "Yes." }))
      .mockResolvedValueOnce(
        jsonResponse({ link: "https://admissions.example.edu/visa" }),
      );
    vi.stubGlobal("fetch", fetchMock);
    ask("Do I need a visa?");
    await flush();
    query<HTMLButtonElement>(".satisfied-no").click();
    await flush();

    expect(fetchMock).toHaveBeenCalledTimes(2);
    const [url, init] = fetchMock.mock.calls[1];
    expect(url).toBe("/api/chat/unsatisfied");
    expect(JSON.parse(init.body)).toEqual({
      question: "Do I need a visa?",
      answer: "Yes.",
    });
    const anchor = query<HTMLAnchorElement>(".help-link");
    expect(anchor.getAttribute("href")).toBe(
      "https://admissions.example.edu/visa",
    );
    expect(anchor.textContent).toBe("https://admissions.example.edu/visa");
    expect(document.querySelector(".satisfaction")).toBeNull();
  });

  it("admits when no link is available either", async () => {
    const fetchMock = vi
      .fn()
      .mockResolvedValueOnce(
        jsonResponse({
          status: "no_answer",
          answer: "I am sorry, I do not have an answer for that.",
        }),
      )
      .mockResolvedValueOnce(jsonResponse({}));
    vi.stubGlobal("fetch", fetchMock);
    ask("I like sports");
    await flush();
    query<HTMLButtonElement>(".satisfied-no").click();
    await flush();

    const bots = queryAll(".turn.bot");
    expect(bots[bots.length - 1].textContent).toBe(NO_LINK_TEXT);
  });

  it("relays spelling suggestions without a satisfaction prompt", async () => {
    const fetchMock = vi.fn().mockResolvedValueOnce(
      jsonResponse({
        status: "spelling",
        issues: [{ word: "vsia", position: 4, suggestions: ["visa", "via"] }],
      }),
    );
    vi.stubGlobal("fetch", fetchMock);
    ask("Do I need a vsia?");
    await flush();

    const bots = queryAll(".turn.bot");
    expect(bots[1].textContent).toBe(
      'I do not recognise "vsia". Did you mean: visa, via?',
    );
    expect(document.querySelector(".satisfaction")).toBeNull();
  });

  it("asks for a rephrase when the gate rejects the sentence", async () => {
    const fetchMock = vi.fn().mockResolvedValueOnce(
      jsonResponse({ status: "invalid_sentence" }),
    );
    vi.stubGlobal("fetch", fetchMock);
    ask("yes and yes not yes");
    await flush();

    const bots = queryAll(".turn.bot");
    expect(bots[1].textContent).toBe(REPHRASE_PROMPT);
    expect(document.querySelector(".satisfaction")).toBeNull();
  });

  it("keeps the input and shows a banner when the server is unreachable", async () => {
    const fetchMock = vi.fn().mockRejectedValueOnce(new TypeError("refused"));
    vi.stubGlobal("fetch", fetchMock);
    ask("How can I apply?");
    await flush();

    const banner = query(".banner");
    expect(banner.classList.contains("hidden")).toBe(false);
    expect(banner.textContent).toBe("Could not reach the server.");
    expect(query<HTMLInputElement>(".chat-form input").value).toBe(
      "How can I apply?",
    );
  });

  it("surfaces the server's validation message", async () => {
    const fetchMock = vi.fn().mockResolvedValueOnce(
      jsonResponse(
        { error: "validation_error", message: "question must not be blank" },
        400,
      ),
    );
    vi.stubGlobal("fetch", fetchMock);
    ask("?");
    await flush();

    expect(query(".banner").textContent).toBe("question must not be blank");
  });

  it("renders answers as text, never as markup", async () => {
    const fetchMock = vi.fn().mockResolvedValueOnce(
      jsonResponse({ status: "answer", answer: "<b>bold</b> move" }),
    );
    vi.stubGlobal("fetch", fetchMock);
    ask("How can I apply?");
    await flush();

    const bots = queryAll(".turn.bot");
    expect(bots[1].textContent).toBe("<b>bold</b> move");
    expect(bots[1].querySelector("b")).toBeNull();
  });
});
