/** Shared scaffolding for the DOM-level tests. */

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

/** Waits for pending promise chains (fetch mocks resolve in microtasks). */
export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

export function query<T extends Element>(selector: string): T {
  const node = document.querySelector(selector);
  if (!node) {
    throw new Error(`no element matches ${selector}`);
  }
  return node as T;
}

export function queryAll<T extends Element>(selector: string): T[] {
  return Array.from(document.querySelectorAll(selector)) as T[];
}

export function submitForm(selector: string): void {
  query<HTMLFormElement>(selector).dispatchEvent(
    new Event("submit", { cancelable: true }),
  );
}

export function appRoot(): HTMLElement {
  document.body.innerHTML = '<main id="app"></main>';
  return document.getElementById("app") as HTMLElement;
}
