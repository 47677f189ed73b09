use crate::model::SourceSpan;

/// Replacement of a span of source text. A zero-length span inserts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextEdit {
    pub span: SourceSpan,
    pub new_text: String,
}

impl TextEdit {
    pub fn new(span: SourceSpan, new_text: impl Into<String>) -> Self {
        TextEdit {
            span,
            new_text: new_text.into(),
        }
    }

    /// Whether two edits touch the same text. Two insertions at the same
    /// offset conflict because their relative order is ambiguous.
    pub fn overlaps(&self, other: &TextEdit) -> bool {
        let (a, b) = (self.span.range(), other.span.range());
        if a.is_empty() && b.is_empty() {
            return a.start == b.start;
        }
        a.start < b.end && b.start < a.end
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EditError {
    #[error("edits at bytes {first}..{first_end} and {second}..{second_end} overlap")]
    OverlappingEdits {
        first: usize,
        first_end: usize,
        second: usize,
        second_end: usize,
    },
    #[error("edit at bytes {start}..{end} is outside the source or splits a character")]
    OutOfBounds { start: usize, end: usize },
}

/// Applies a set of non-overlapping edits to `source`.
pub fn apply_edits(source: &str, edits: &[TextEdit]) -> Result<String, EditError> {
    let mut sorted: Vec<&TextEdit> = edits.iter().collect();
    sorted.sort_by_key(|e| (e.span.byte_offset, e.span.byte_length));
    for e in &sorted {
        let r = e.span.range();
        if r.end > source.len() || !source.is_char_boundary(r.start) || !source.is_char_boundary(r.end)
        {
            return Err(EditError::OutOfBounds {
                start: r.start,
                end: r.end,
            });
        }
    }
    for pair in sorted.windows(2) {
        if pair[0].overlaps(pair[1]) {
            return Err(EditError::OverlappingEdits {
                first: pair[0].span.byte_offset,
                first_end: pair[0].span.end_offset(),
                second: pair[1].span.byte_offset,
                second_end: pair[1].span.end_offset(),
            });
        }
    }
    let mut out = String::with_capacity(source.len());
    let mut cursor = 0;
    for e in sorted {
        out.push_str(&source[cursor..e.span.byte_offset]);
        out.push_str(&e.new_text);
        cursor = e.span.end_offset();
    }
    out.push_str(&source[cursor..]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn span(start: usize, end: usize) -> SourceSpan {
        SourceSpan {
            byte_offset: start,
            byte_length: end - start,
            ..SourceSpan::default()
        }
    }

    #[test]
    fn single_substitution() {
        let edits = [TextEdit::new(span(1, 2), "X")];
        assert_eq!(apply_edits("abc", &edits).unwrap(), "aXc");
    }

    #[test]
    fn no_edits_is_identity() {
        assert_eq!(apply_edits("anything at all", &[]).unwrap(), "anything at all");
    }

    #[test]
    fn overlapping_edits_are_rejected() {
        let edits = [TextEdit::new(span(0, 2), "X"), TextEdit::new(span(1, 3), "Y")];
        assert!(matches!(
            apply_edits("abcd", &edits),
            Err(EditError::OverlappingEdits { .. })
        ));
        let inserts = [TextEdit::new(span(1, 1), "X"), TextEdit::new(span(1, 1), "Y")];
        assert!(apply_edits("abcd", &inserts).is_err());
    }

    #[test]
    fn adjacent_edits_are_fine() {
        let edits = [
            TextEdit::new(span(0, 1), "A"),
            TextEdit::new(span(1, 1), "-"),
            TextEdit::new(span(1, 2), "B"),
        ];
        assert_eq!(apply_edits("abc", &edits).unwrap(), "A-Bc");
    }

    #[test]
    fn out_of_bounds() {
        assert!(matches!(
            apply_edits("ab", &[TextEdit::new(span(1, 5), "")]),
            Err(EditError::OutOfBounds { .. })
        ));
    }

    fn edit_set() -> impl Strategy<Value = (String, Vec<(usize, usize, String)>)> {
        "[a-z ]{0,40}".prop_flat_map(|src| {
            let len = src.len();
            let cuts = proptest::collection::vec(0..=len, 0..8);
            let texts = proptest::collection::vec("[A-Z]{0,3}", 8);
            (Just(src), cuts, texts).prop_map(|(src, mut cuts, texts)| {
                cuts.sort();
                // consecutive cut pairs form disjoint spans
                let edits = cuts
                    .chunks(2)
                    .filter(|c| c.len() == 2 && c[0] < c[1])
                    .zip(texts)
                    .map(|(c, t)| (c[0], c[1], t))
                    .collect();
                (src, edits)
            })
        })
    }

    proptest! {
        #[test]
        fn batch_equals_descending_one_at_a_time((src, raw) in edit_set()) {
            let edits: Vec<TextEdit> = raw.iter().map(|(s, e, t)| TextEdit::new(span(*s, *e), t.clone())).collect();
            let batch = apply_edits(&src, &edits).unwrap();
            let mut one = src.clone();
            let mut desc = edits.clone();
            desc.sort_by_key(|e| std::cmp::Reverse(e.span.byte_offset));
            for e in desc {
                one.replace_range(e.span.range(), &e.new_text);
            }
            prop_assert_eq!(batch, one);
        }
    }
}
