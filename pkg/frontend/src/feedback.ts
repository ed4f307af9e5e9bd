/** Anonymous feedback page: a five-star rating plus an optional note. */

import { ApiError, sendFeedback } from "./api.js";
import { button, clear, el } from "./dom.js";

export const MESSAGE_LIMIT = 2000;

export function mountFeedbackPage(root: HTMLElement): void {
  clear(root);
  let mark = 0;

  const banner = el("div", "banner hidden");
  const stars = el("div", "stars");
  const starButtons: HTMLButtonElement[] = [];

  const paint = () => {
    starButtons.forEach((b, i) => {
      b.textContent = i < mark ? "★" : "☆";
      b.classList.toggle("chosen", i < mark);
    });
    submit.disabled = mark < 1;
  };

  for (let i = 1; i <= 5; i += 1) {
    const star = button("☆", "star", () => {
      mark = i;
      paint();
    });
    starButtons.push(star);
    stars.appendChild(star);
  }

  const form = el("form", "feedback-form");
  const message = el("textarea");
  message.maxLength = MESSAGE_LIMIT;
  message.placeholder = "Tell us how the chatbot did (optional)";
  const submit = el("button", "", "Submit feedback");
  submit.type = "submit";
  submit.disabled = true;
  form.appendChild(message);
  form.appendChild(submit);

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    banner.classList.add("hidden");
    if (mark < 1) {
      return;
    }
    if (message.value.length > MESSAGE_LIMIT) {
      banner.textContent = `Message is too long (limit ${MESSAGE_LIMIT} characters).`;
      banner.classList.remove("hidden");
      return;
    }
    submit.disabled = true;
    sendFeedback(mark, message.value)
      .then(() => {
        banner.textContent = "Thank you for your feedback.";
        banner.classList.remove("hidden");
        mark = 0;
        message.value = "";
        paint();
      })
      .catch((err: unknown) => {
        banner.textContent =
          err instanceof ApiError ? err.message : "Something went wrong.";
        banner.classList.remove("hidden");
        submit.disabled = false;
      });
  });

  root.appendChild(el("h2", "", "Rate your experience"));
  root.appendChild(banner);
  root.appendChild(stars);
  root.appendChild(form);
  paint();
}
