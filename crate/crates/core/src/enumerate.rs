//! Lazy, ordered enumeration of (barred, special) preferential arrangements.
//!
//! Arrangements come out in lexicographic order of their canonical text,
//! where element numbers compare numerically and the separators order as
//! end < ` ` < `,` < element < `|`. For at most nine elements this is plain
//! string order.

use crate::arrangement::{BarredPA, PreferentialArrangement};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    /// Start a new block with this element (after `,` or at a section start).
    Open(usize),
    /// Add this element to the current block (after ` `).
    Join(usize),
    Bar,
    End,
}

struct Frame {
    options: Vec<Token>,
    next: usize,
}

/// Depth-first generator over canonical token sequences.
pub struct BpaIter {
    len: usize,
    special: bool,
    sections: Vec<Vec<Vec<usize>>>,
    remaining: Vec<bool>,
    remaining_count: usize,
    bars_left: usize,
    stack: Vec<Frame>,
}

impl BpaIter {
    fn new(bars: usize, len: usize, special: bool) -> Self {
        let mut it = Self {
            len,
            special,
            sections: vec![Vec::new()],
            remaining: vec![true; len + 1],
            remaining_count: len,
            bars_left: bars,
            stack: Vec::new(),
        };
        let options = it.options();
        it.stack.push(Frame { options, next: 0 });
        it
    }

    fn current_block_last(&self) -> Option<usize> {
        self.sections.last().and_then(|s| s.last()).and_then(|b| b.last()).copied()
    }

    fn section_empty(&self) -> bool {
        self.sections.last().is_none_or(Vec::is_empty)
    }

    /// Sections still needing an element, counting the current one.
    fn feasible_after(&self, remaining: usize, bars_left: usize, section_empty: bool) -> bool {
        !self.special || remaining >= bars_left + usize::from(section_empty)
    }

    fn options(&self) -> Vec<Token> {
        let mut out = Vec::new();
        let rem = self.remaining_count;
        let empty = self.section_empty();
        if rem == 0 && self.bars_left == 0 && !(self.special && empty) {
            out.push(Token::End);
        }
        let free = || (1..=self.len).filter(|&e| self.remaining[e]);
        match self.current_block_last() {
            Some(last) if !empty => {
                for e in free().filter(|&e| e > last) {
                    if self.feasible_after(rem - 1, self.bars_left, false) {
                        out.push(Token::Join(e));
                    }
                }
                for e in free() {
                    if self.feasible_after(rem - 1, self.bars_left, false) {
                        out.push(Token::Open(e));
                    }
                }
            }
            _ => {
                for e in free() {
                    if self.feasible_after(rem - 1, self.bars_left, false) {
                        out.push(Token::Open(e));
                    }
                }
            }
        }
        if self.bars_left > 0 && !(self.special && empty) && self.feasible_after(rem, self.bars_left - 1, true) {
            out.push(Token::Bar);
        }
        out
    }

    fn apply(&mut self, tok: Token) {
        match tok {
            Token::Open(e) => {
                self.sections.last_mut().expect("section").push(vec![e]);
                self.take(e);
            }
            Token::Join(e) => {
                self.sections.last_mut().and_then(|s| s.last_mut()).expect("block").push(e);
                self.take(e);
            }
            Token::Bar => {
                self.sections.push(Vec::new());
                self.bars_left -= 1;
            }
            Token::End => {}
        }
    }

    fn undo(&mut self, tok: Token) {
        match tok {
            Token::Open(e) => {
                self.sections.last_mut().expect("section").pop();
                self.give(e);
            }
            Token::Join(e) => {
                self.sections.last_mut().and_then(|s| s.last_mut()).expect("block").pop();
                self.give(e);
            }
            Token::Bar => {
                self.sections.pop();
                self.bars_left += 1;
            }
            Token::End => {}
        }
    }

    fn take(&mut self, e: usize) {
        self.remaining[e] = false;
        self.remaining_count -= 1;
    }

    fn give(&mut self, e: usize) {
        self.remaining[e] = true;
        self.remaining_count += 1;
    }

    fn snapshot(&self) -> BarredPA {
        BarredPA::from_sections_unchecked(
            self.sections.iter().map(|s| PreferentialArrangement::from_blocks_unchecked(s.clone())).collect(),
        )
    }
}

impl Iterator for BpaIter {
    type Item = BarredPA;

    fn next(&mut self) -> Option<BarredPA> {
        loop {
            let frame = self.stack.last_mut()?;
            if frame.next < frame.options.len() {
                let tok = frame.options[frame.next];
                frame.next += 1;
                if tok == Token::End {
                    return Some(self.snapshot());
                }
                self.apply(tok);
                let options = self.options();
                self.stack.push(Frame { options, next: 0 });
            } else {
                self.stack.pop();
                if let Some(parent) = self.stack.last() {
                    let tok = parent.options[parent.next - 1];
                    self.undo(tok);
                }
            }
        }
    }
}

/// All preferential arrangements of `1..=len`.
pub fn enumerate_pa(len: usize) -> impl Iterator<Item = PreferentialArrangement> {
    BpaIter::new(0, len, false).map(|b| b.into_sections().pop().expect("one section"))
}

/// All barred preferential arrangements of `1..=len` with `bars` bars.
pub fn enumerate_bpa(bars: usize, len: usize) -> BpaIter {
    BpaIter::new(bars, len, false)
}

/// Barred arrangements with every section nonempty.
pub fn enumerate_special(bars: usize, len: usize) -> BpaIter {
    BpaIter::new(bars, len, true)
}
