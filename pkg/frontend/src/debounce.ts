/** Trailing-edge debounce: at most one underlying call per `waitMs`. */

export interface Debounced<A extends unknown[]> {
  (...args: A): void;
  cancel(): void;
  flush(): void;
}

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs = 150,
): Debounced<A> {
  let timer: ReturnType<typeof setTimeout> | null = null;
  let pending: A | null = null;

  const wrapped = (...args: A) => {
    pending = args;
    if (timer !== null) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = null;
      const args2 = pending!;
      pending = null;
      fn(...args2);
    }, waitMs);
  };
  wrapped.cancel = () => {
    if (timer !== null) clearTimeout(timer);
    timer = null;
    pending = null;
  };
  wrapped.flush = () => {
    if (timer === null) return;
    clearTimeout(timer);
    timer = null;
    const args2 = pending!;
    pending = null;
    fn(...args2);
  };
  return wrapped;
}
