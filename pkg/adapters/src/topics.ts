/**
 * Research-topic detection: maximal token n-grams whose normalized surface
 * form appears in a topic vocabulary. N-grams may not start or end on a
 * stopword, and shorter matches nested inside an accepted longer match are
 * suppressed.
 */

import { normalizeLabel } from "./schema";
import { Span } from "./spans";

const EDGE_STOPWORDS = new Set([
  "the", "a", "an", "of", "and", "or", "in", "on", "for", "with", "to",
  "by", "from", "at", "as", "is", "are", "this", "that", "these", "those",
  "we", "our", "its", "their",
]);

export type TopicMatch = Span & { label: string };

export function matchTopics(
  surfaces: string[],
  vocabulary: Set<string>,
  maxNgram = 4
): TopicMatch[] {
  const n = surfaces.length;
  const taken: Span[] = [];
  const found: TopicMatch[] = [];
  for (let size = Math.min(maxNgram, n); size >= 1; size--) {
    for (let start = 0; start + size <= n; start++) {
      const end = start + size;
      if (EDGE_STOPWORDS.has(surfaces[start].toLowerCase())) continue;
      if (EDGE_STOPWORDS.has(surfaces[end - 1].toLowerCase())) continue;
      const label = normalizeLabel(surfaces.slice(start, end).join(" "));
      if (!label || !vocabulary.has(label)) continue;
      if (taken.some((t) => start >= t.start && end <= t.end)) continue;
      taken.push({ start, end });
      found.push({ start, end, label });
    }
  }
  found.sort((a, b) => a.start - b.start || a.end - b.end || (a.label < b.label ? -1 : 1));
  return found;
}
