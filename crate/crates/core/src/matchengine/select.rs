use std::cmp::Reverse;

use super::MatchResult;

/// Picks a non-overlapping subset of one sentence's candidates. Longer
/// spans win, then earlier starts, then earlier database order. The result
/// is sorted by start position.
pub fn select_matches(candidates: &[MatchResult]) -> Vec<MatchResult> {
    let mut ranked: Vec<&MatchResult> = candidates.iter().collect();
    ranked.sort_by(|a, b| {
        (Reverse(a.span.len()), a.span.start, a.unit_ref.order)
            .cmp(&(Reverse(b.span.len()), b.span.start, b.unit_ref.order))
            .then_with(|| a.cmp(b))
    });

    let mut chosen: Vec<MatchResult> = Vec::new();
    for cand in ranked {
        if chosen.iter().all(|c| !c.span.overlaps(&cand.span)) {
            chosen.push(cand.clone());
        }
    }
    chosen.sort_by_key(|m| m.span.start);
    chosen
}
