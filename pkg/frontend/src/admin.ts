/**
 * Admin console: login, then tabs for the information base, the
 * unanswered-question logs, and visitor feedback.
 *
 * The session token lives in module state only; a page reload always
 * returns to the login form.
 */

import {
  addInfo,
  ApiError,
  deleteFeedback,
  deleteInfo,
  deleteLog,
  InfoItem,
  listFeedback,
  listInfo,
  listLogs,
  login,
  overallFeedback,
  updateInfo,
} from "./api.js";
import { button, clear, el } from "./dom.js";
import { pageNumbers, paginate } from "./pagination.js";

let token: string | null = null;

/** Drops the in-memory session. Exposed for tests. */
export function resetAdminSession(): void {
  token = null;
}

interface View {
  root: HTMLElement;
  body: HTMLElement;
  banner: HTMLElement;
}

type Tab = "info" | "logs" | "feedback";

function showBanner(banner: HTMLElement, text: string): void {
  banner.textContent = text;
  banner.classList.remove("hidden");
}

async function call<T>(view: View, action: () => Promise<T>): Promise<T | null> {
  try {
    return await action();
  } catch (err) {
    if (err instanceof ApiError && err.status === 401) {
      token = null;
      renderLogin(view.root, "Your session has expired. Please log in again.");
      return null;
    }
    const message =
      err instanceof ApiError ? err.message : "Something went wrong.";
    showBanner(view.banner, message);
    return null;
  }
}

function renderLogin(root: HTMLElement, notice: string): void {
  clear(root);
  const banner = el("div", "banner hidden");
  if (notice) {
    showBanner(banner, notice);
  }

  const form = el("form", "login-form");
  const username = el("input");
  username.type = "text";
  username.placeholder = "Username";
  username.name = "username";
  const password = el("input");
  password.type = "password";
  password.placeholder = "Password";
  password.name = "password";
  const submit = el("button", "", "Log in");
  submit.type = "submit";
  form.appendChild(username);
  form.appendChild(password);
  form.appendChild(submit);

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    banner.classList.add("hidden");
    login(username.value, password.value)
      .then((grant) => {
        token = grant.token;
        renderDashboard(root, "info");
      })
      .catch((err: unknown) => {
        const message =
          err instanceof ApiError ? err.message : "Something went wrong.";
        showBanner(banner, message);
      });
  });

  root.appendChild(el("h2", "", "Admin login"));
  root.appendChild(banner);
  root.appendChild(form);
}

function renderDashboard(root: HTMLElement, tab: Tab): void {
  clear(root);
  const bar = el("div", "admin-bar");
  bar.appendChild(el("h2", "", "Admin console"));
  bar.appendChild(
    button("Log out", "logout", () => {
      token = null;
      renderLogin(root, "");
    }),
  );

  const tabs = el("div", "tabs");
  const tabDefs: Array<[Tab, string]> = [
    ["info", "Information"],
    ["logs", "Logs"],
    ["feedback", "Feedback"],
  ];
  for (const [key, label] of tabDefs) {
    const node = button(label, `tab tab-${key}`, () => {
      renderDashboard(root, key);
    });
    if (key === tab) {
      node.classList.add("active");
    }
    tabs.appendChild(node);
  }

  const banner = el("div", "banner hidden");
  const body = el("div", "tab-body");
  root.appendChild(bar);
  root.appendChild(tabs);
  root.appendChild(banner);
  root.appendChild(body);

  const view: View = { root, body, banner };
  if (tab === "info") {
    void renderInfoTab(view, 1);
  } else if (tab === "logs") {
    void renderLogsTab(view);
  } else {
    void renderFeedbackTab(view);
  }
}

function pager(
  current: number,
  pageCount: number,
  goTo: (page: number) => void,
): HTMLElement {
  const nav = el("div", "pager");
  const first = button("<<", "page-first", () => goTo(1));
  first.disabled = current === 1;
  const prev = button("<", "page-prev", () => goTo(current - 1));
  prev.disabled = current === 1;
  nav.appendChild(first);
  nav.appendChild(prev);
  for (const n of pageNumbers(pageCount, current)) {
    const page = button(String(n), "page-number", () => goTo(n));
    if (n === current) {
      page.classList.add("active");
    }
    nav.appendChild(page);
  }
  const next = button(">", "page-next", () => goTo(current + 1));
  next.disabled = current === pageCount;
  const last = button(">>", "page-last", () => goTo(pageCount));
  last.disabled = current === pageCount;
  nav.appendChild(next);
  nav.appendChild(last);
  return nav;
}

function headerRow(labels: string[]): HTMLTableRowElement {
  const row = el("tr");
  for (const label of labels) {
    row.appendChild(el("th", "", label));
  }
  return row;
}

function splitKeywords(raw: string): string[] {
  return raw
    .split(",")
    .map((k) => k.trim())
    .filter((k) => k.length > 0);
}

function addInfoForm(view: View, refresh: () => void): HTMLFormElement {
  const form = el("form", "add-info");
  const question = el("input");
  question.type = "text";
  question.placeholder = "Question";
  question.className = "new-question";
  const answer = el("textarea");
  answer.placeholder = "Answer";
  answer.className = "new-answer";
  const keywordFields = el("div", "keyword-fields");
  const keywordInputs: HTMLInputElement[] = [];
  for (let i = 1; i <= 5; i += 1) {
    const input = el("input");
    input.type = "text";
    input.placeholder = `Keyword ${i}`;
    input.className = "new-keyword";
    keywordInputs.push(input);
    keywordFields.appendChild(input);
  }
  const submit = el("button", "", "Add entry");
  submit.type = "submit";
  form.appendChild(question);
  form.appendChild(answer);
  form.appendChild(keywordFields);
  form.appendChild(submit);

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const keywords = keywordInputs
      .map((input) => input.value.trim())
      .filter((value) => value.length > 0);
    void call(view, () =>
      addInfo(token ?? "", {
        question: question.value,
        answer: answer.value,
        keywords,
      }),
    ).then((created) => {
      if (created) {
        refresh();
      }
    });
  });
  return form;
}

function infoRow(view: View, item: InfoItem, refresh: () => void): HTMLTableRowElement {
  const row = el("tr", "info-row");
  row.appendChild(el("td", "", String(item.id)));
  row.appendChild(el("td", "", item.question));
  row.appendChild(el("td", "", item.answer));
  row.appendChild(el("td", "", item.keywords.join(", ")));
  const actions = el("td", "actions");
  actions.appendChild(
    button("Edit", "edit-info", () => {
      editInfoRow(view, row, item, refresh);
    }),
  );
  actions.appendChild(
    button("Delete", "delete-info", () => {
      void call(view, () => deleteInfo(token ?? "", item.id)).then((done) => {
        if (done) {
          refresh();
        }
      });
    }),
  );
  row.appendChild(actions);
  return row;
}

function editInfoRow(
  view: View,
  row: HTMLTableRowElement,
  item: InfoItem,
  refresh: () => void,
): void {
  clear(row);
  row.appendChild(el("td", "", String(item.id)));

  const question = el("input");
  question.type = "text";
  question.value = item.question;
  question.className = "edit-question";
  const questionCell = el("td");
  questionCell.appendChild(question);
  row.appendChild(questionCell);

  const answer = el("textarea");
  answer.value = item.answer;
  answer.className = "edit-answer";
  const answerCell = el("td");
  answerCell.appendChild(answer);
  row.appendChild(answerCell);

  const keywords = el("input");
  keywords.type = "text";
  keywords.value = item.keywords.join(", ");
  keywords.className = "edit-keywords";
  const keywordCell = el("td");
  keywordCell.appendChild(keywords);
  row.appendChild(keywordCell);

  const actions = el("td", "actions");
  actions.appendChild(
    button("Save", "save-info", () => {
      void call(view, () =>
        updateInfo(token ?? "", item.id, {
          question: question.value,
          answer: answer.value,
          keywords: splitKeywords(keywords.value),
        }),
      ).then((updated) => {
        if (updated) {
          refresh();
        }
      });
    }),
  );
  actions.appendChild(button("Cancel", "cancel-edit", refresh));
  row.appendChild(actions);
}

async function renderInfoTab(view: View, page: number): Promise<void> {
  const listing = await call(view, () => listInfo(token ?? ""));
  if (!listing) {
    return;
  }
  clear(view.body);
  const refresh = () => {
    void renderInfoTab(view, page);
  };
  view.body.appendChild(addInfoForm(view, () => void renderInfoTab(view, 1)));

  const sheet = paginate(listing.items, page);
  const table = el("table", "info-table");
  table.appendChild(headerRow(["id", "question", "answer", "keywords", ""]));
  for (const item of sheet.items) {
    table.appendChild(infoRow(view, item, refresh));
  }
  view.body.appendChild(table);
  view.body.appendChild(
    pager(sheet.page, sheet.pageCount, (n) => {
      void renderInfoTab(view, n);
    }),
  );
}

async function renderLogsTab(view: View): Promise<void> {
  const listing = await call(view, () => listLogs(token ?? ""));
  if (!listing) {
    return;
  }
  clear(view.body);
  const table = el("table", "logs-table");
  table.appendChild(headerRow(["id", "question", "answer", "label", ""]));
  for (const item of listing.items) {
    const row = el("tr", "log-row");
    row.appendChild(el("td", "", String(item.id)));
    row.appendChild(el("td", "", item.question));
    row.appendChild(el("td", "", item.answer));
    row.appendChild(el("td", "", item.label ?? "unlabeled"));
    const actions = el("td", "actions");
    actions.appendChild(
      button("Delete", "delete-log", () => {
        void call(view, () => deleteLog(token ?? "", item.id)).then((done) => {
          if (done) {
            void renderLogsTab(view);
          }
        });
      }),
    );
    row.appendChild(actions);
    table.appendChild(row);
  }
  view.body.appendChild(table);
}

async function renderFeedbackTab(view: View): Promise<void> {
  const listing = await call(view, () => listFeedback(token ?? ""));
  if (!listing) {
    return;
  }
  const overall = await call(view, () => overallFeedback(token ?? ""));
  if (!overall) {
    return;
  }
  clear(view.body);
  view.body.appendChild(
    el(
      "p",
      "overall-score",
      `Overall score: ${overall.mean.toFixed(2)} from ${overall.count} entries`,
    ),
  );
  const table = el("table", "feedback-table");
  table.appendChild(headerRow(["id", "mark", "message", ""]));
  for (const item of listing.items) {
    const row = el("tr", "feedback-row");
    row.appendChild(el("td", "", String(item.id)));
    row.appendChild(
      el("td", "mark", "★".repeat(item.mark) + "☆".repeat(5 - item.mark)),
    );
    row.appendChild(el("td", "", item.message));
    const actions = el("td", "actions");
    actions.appendChild(
      button("Delete", "delete-feedback", () => {
        void call(view, () => deleteFeedback(token ?? "", item.id)).then(
          (done) => {
            if (done) {
              void renderFeedbackTab(view);
            }
          },
        );
      }),
    );
    row.appendChild(actions);
    table.appendChild(row);
  }
  view.body.appendChild(table);
}

export function mountAdminPage(root: HTMLElement): void {
  if (token === null) {
    renderLogin(root, "");
  } else {
    renderDashboard(root, "info");
  }
}
