// Exact "num/den" rational strings for input validation only.  Displayed
// values are always verbatim server strings; this module never reformats
// server output, it only checks what the user typed before sending it.

export interface Rational {
  readonly num: bigint;
  readonly den: bigint; // always > 0
}

const RATIONAL_RE = /^(-?\d+)(?:\/(\d+))?$/;

/** Parse a "num/den" (or bare integer) string; null if malformed or den = 0. */
export function parseRational(text: string): Rational | null {
  const m = RATIONAL_RE.exec(text.trim());
  if (!m) return null;
  const num = BigInt(m[1]!);
  const den = m[2] === undefined ? 1n : BigInt(m[2]);
  if (den === 0n) return null;
  return { num, den };
}

function gcd(a: bigint, b: bigint): bigint {
  a = a < 0n ? -a : a;
  b = b < 0n ? -b : b;
  while (b !== 0n) [a, b] = [b, a % b];
  return a;
}

export function normalize(r: Rational): Rational {
  const g = gcd(r.num, r.den) || 1n;
  return { num: r.num / g, den: r.den / g };
}

/** Exact comparison: sign of a - b. */
export function compare(a: Rational, b: Rational): -1 | 0 | 1 {
  const lhs = a.num * b.den;
  const rhs = b.num * a.den;
  return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
}

export function isPositive(r: Rational): boolean {
  return r.num > 0n;
}

/** Format for the wire: always "num/den" with positive denominator. */
export function toWire(r: Rational): string {
  const n = normalize(r);
  return `${n.num}/${n.den}`;
}

/**
 * Validate a user-typed antiflip parameter against the open interval (0, cap),
 * with a denominator limit so sliders stay legible.  Returns the wire string
 * or an error message.
 */
export function validateInRange(
  text: string,
  cap: string,
  maxDen: bigint = 1000000n,
): { ok: true; wire: string } | { ok: false; reason: string } {
  const value = parseRational(text);
  if (value === null) return { ok: false, reason: `not a rational: ${JSON.stringify(text)}` };
  const bound = parseRational(cap);
  if (bound === null) return { ok: false, reason: `bad cap from server: ${cap}` };
  if (!isPositive(value)) return { ok: false, reason: "must be positive" };
  if (compare(value, bound) >= 0) return { ok: false, reason: `must be below ${cap}` };
  if (normalize(value).den > maxDen) return { ok: false, reason: "denominator too large" };
  return { ok: true, wire: toWire(value) };
}
