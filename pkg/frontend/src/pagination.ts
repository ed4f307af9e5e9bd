/** Client-side paging over already-fetched lists. */

export const ROWS_PER_PAGE = 10;

export interface Page<T> {
  items: T[];
  page: number;
  pageCount: number;
}

export function paginate<T>(
  items: T[],
  page: number,
  perPage = ROWS_PER_PAGE,
): Page<T> {
  const pageCount = Math.max(1, Math.ceil(items.length / perPage));
  const current = Math.min(Math.max(page, 1), pageCount);
  const start = (current - 1) * perPage;
  return {
    items: items.slice(start, start + perPage),
    page: current,
    pageCount,
  };
}

/** Page numbers to display: a window of `width` centred on the current page. */
export function pageNumbers(
  pageCount: number,
  current: number,
  width = 5,
): number[] {
  let first = Math.max(1, current - Math.floor(width / 2));
  const last = Math.min(pageCount, first + width - 1);
  first = Math.max(1, last - width + 1);
  const numbers: number[] = [];
  for (let n = first; n <= last; n += 1) {
    numbers.push(n);
  }
  return numbers;
}
