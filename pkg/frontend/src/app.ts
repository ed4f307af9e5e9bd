/** Hash-based router wiring the three pages into the page shell. */

import { mountAdminPage } from "./admin.js";
import { mountChatPage } from "./chat.js";
import { mountFeedbackPage } from "./feedback.js";

const routes: Record<string, (root: HTMLElement) => void> = {
  "#/chat": mountChatPage,
  "#/feedback": mountFeedbackPage,
  "#/admin": mountAdminPage,
};

export function render(): void {
  const root = document.getElementById("app");
  if (!root) {
    return;
  }
  const hash = window.location.hash;
  const mount = routes[hash] ?? mountChatPage;
  mount(root);
  document.querySelectorAll("nav.site a").forEach((anchor) => {
    const link = anchor as HTMLAnchorElement;
    link.classList.toggle(
      "active",
      link.getAttribute("href") === hash ||
        (!routes[hash] && link.getAttribute("href") === "#/chat"),
    );
  });
}

window.addEventListener("hashchange", render);
render();
