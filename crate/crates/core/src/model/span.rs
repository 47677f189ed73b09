use std::fmt;
use std::path::Path;
use std::sync::Arc;

/// A region of a source file.
///
/// Lines and columns are 1-based and count characters; the byte range is
/// kept alongside so edits can be applied without re-scanning the file.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub file: Arc<Path>,
    pub start_line: u32,
    pub start_col: u32,
    pub end_line: u32,
    pub end_col: u32,
    pub byte_offset: usize,
    pub byte_length: usize,
}

impl SourceSpan {
    pub fn new(file: Arc<Path>, index: &LineIndex, start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        let (start_line, start_col) = index.position(start);
        let (end_line, end_col) = index.position(end);
        SourceSpan {
            file,
            start_line,
            start_col,
            end_line,
            end_col,
            byte_offset: start,
            byte_length: end - start,
        }
    }

    pub fn end_offset(&self) -> usize {
        self.byte_offset + self.byte_length
    }

    pub fn range(&self) -> std::ops::Range<usize> {
        self.byte_offset..self.end_offset()
    }

    /// Smallest span covering both `self` and `other` (same file assumed).
    pub fn to(&self, other: &SourceSpan) -> SourceSpan {
        let (first, last) = if self.byte_offset <= other.byte_offset {
            (self, other)
        } else {
            (other, self)
        };
        let end = self.end_offset().max(other.end_offset());
        let (end_line, end_col) = if last.end_offset() >= first.end_offset() {
            (last.end_line, last.end_col)
        } else {
            (first.end_line, first.end_col)
        };
        SourceSpan {
            file: first.file.clone(),
            start_line: first.start_line,
            start_col: first.start_col,
            end_line,
            end_col,
            byte_offset: first.byte_offset,
            byte_length: end - first.byte_offset,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.byte_length == 0
    }
}

impl Default for SourceSpan {
    fn default() -> Self {
        SourceSpan {
            file: Arc::from(Path::new("")),
            start_line: 1,
            start_col: 1,
            end_line: 1,
            end_col: 1,
            byte_offset: 0,
            byte_length: 0,
        }
    }
}

impl fmt::Debug for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}-{}:{}@{}+{}",
            self.file.display(),
            self.start_line,
            self.start_col,
            self.end_line,
            self.end_col,
            self.byte_offset,
            self.byte_length
        )
    }
}

/// Byte offset to line/column lookup for one source text.
#[derive(Debug, Clone)]
pub struct LineIndex {
    line_starts: Vec<usize>,
    text: Arc<str>,
}

impl LineIndex {
    pub fn new(text: &str) -> Self {
        let mut line_starts = vec![0];
        line_starts.extend(text.match_indices('\n').map(|(i, _)| i + 1));
        LineIndex {
            line_starts,
            text: Arc::from(text),
        }
    }

    /// 1-based (line, column) of a byte offset. Offsets inside a multi-byte
    /// character are clamped to the character start.
    pub fn position(&self, offset: usize) -> (u32, u32) {
        let offset = offset.min(self.text.len());
        let line = match self.line_starts.binary_search(&offset) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let start = self.line_starts[line];
        let mut end = offset;
        while !self.text.is_char_boundary(end) {
            end -= 1;
        }
        let col = self.text[start..end].chars().count() + 1;
        (line as u32 + 1, col as u32)
    }

    pub fn span(&self, file: &Arc<Path>, start: usize, end: usize) -> SourceSpan {
        SourceSpan::new(file.clone(), self, start, end)
    }

    pub fn text(&self) -> &str {
        &self.text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_one_based_and_count_chars() {
        let idx = LineIndex::new("ab\nçd\n");
        assert_eq!(idx.position(0), (1, 1));
        assert_eq!(idx.position(2), (1, 3));
        assert_eq!(idx.position(3), (2, 1));
        // 'ç' is two bytes
        assert_eq!(idx.position(5), (2, 2));
        assert_eq!(idx.position(7), (3, 1));
    }

    #[test]
    fn covering_span() {
        let file: Arc<Path> = Arc::from(Path::new("a.rsl"));
        let idx = LineIndex::new("one two\nthree");
        let a = idx.span(&file, 0, 3);
        let b = idx.span(&file, 8, 13);
        let c = a.to(&b);
        assert_eq!(c.range(), 0..13);
        assert_eq!((c.start_line, c.end_line, c.end_col), (1, 2, 6));
    }
}
