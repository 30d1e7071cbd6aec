/**
 * Sentence splitting and Penn-style tokenization for abstract text.
 *
 * Output tokens keep hyphenated compounds and decimal/grouped numbers whole,
 * split possessive 's and n't contractions, and never produce an empty
 * surface form.
 */

// Words before a period that do not end a sentence.
const ABBREVIATIONS = new Set([
  "e.g", "i.e", "al", "etc", "cf", "vs", "fig", "eq", "sec", "no", "resp",
]);

/**
 * Split a text into sentences on ./!/? boundaries, guarding abbreviations
 * and decimal points. Whitespace-only input yields no sentences.
 */
export function splitSentences(text: string): string[] {
  const out: string[] = [];
  let start = 0;
  for (let i = 0; i < text.length; i++) {
    const ch = text[i];
    if (ch !== "." && ch !== "!" && ch !== "?") continue;
    if (ch === ".") {
      const prev = text[i - 1] ?? "";
      const next = text[i + 1] ?? "";
      if (/\d/.test(prev) && /\d/.test(next)) continue; // decimal point
      const before = text.slice(start, i);
      const lastWord = (before.match(/[A-Za-z.]+$/) ?? [""])[0];
      if (ABBREVIATIONS.has(lastWord.toLowerCase().replace(/\.$/, ""))) continue;
      if (/^[A-Z]$/.test(lastWord)) continue; // single initial, as in "J."
    }
    // consume any run of terminators and trailing close-quotes/parens
    let end = i + 1;
    while (end < text.length && /[.!?'")\]]/.test(text[end])) end++;
    const rest = text.slice(end);
    if (rest.length === 0 || /^\s+[A-Z0-9]/.test(rest) || /^\s*$/.test(rest)) {
      const sentence = text.slice(start, end).trim();
      if (sentence) out.push(sentence);
      start = end;
      i = end - 1;
    }
  }
  const tail = text.slice(start).trim();
  if (tail) out.push(tail);
  return out;
}

const TOKEN_RE = new RegExp(
  [
    String.raw`[A-Za-z]+(?=n't\b)`, // verb stem before a contracted "not"
    String.raw`n't\b`,
    String.raw`'(?:s|re|ve|ll|d|m)\b`,
    String.raw`[A-Za-z]\.[A-Za-z]\.`, // e.g. / i.e.
    String.raw`[A-Za-z]+(?:[-/][A-Za-z0-9]+)*`, // words, hyphen/slash compounds
    String.raw`\d+(?:,\d{3})*(?:\.\d+)?`, // 1,000 / 3.5 / 42
    "``|''",
    String.raw`[()\[\]{},;:.!?%$#&]`,
    String.raw`\S`,
  ].join("|"),
  "g"
);

/** Tokenize one sentence; every non-space character lands in some token. */
export function tokenizeSentence(sentence: string): string[] {
  return sentence.match(TOKEN_RE) ?? [];
}
