//! Streaming CoNLL-U reader keeping only the ID and HEAD columns.
//!
//! Sentences are blank-line separated blocks. Comment lines are skipped
//! except `# sent_id = ...`, multiword-token ranges (`3-4`) and empty nodes
//! (`5.1`) are ignored. A block that does not describe a tree is skipped and
//! reported with a [`SkipReason`]; the stream never aborts on bad data.

use std::fmt;
use std::io::{self, BufRead};

use deptree_core::{Tree, TreeError};
use serde::Serialize;

/// One sentence: `heads[i]` is the head of token `i + 1`, 0 for the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceRecord {
    pub id: String,
    pub heads: Vec<u32>,
    tree: Tree,
}

impl SentenceRecord {
    /// Validates `heads` as a single-rooted tree.
    pub fn new(
        id: impl Into<String>,
        heads: Vec<u32>,
    ) -> Result<SentenceRecord, (SkipReason, String)> {
        let tree = heads_to_tree(&heads)?;
        Ok(SentenceRecord {
            id: id.into(),
            heads,
            tree,
        })
    }

    pub fn n(&self) -> usize {
        self.heads.len()
    }

    /// Undirected tree induced by the head links.
    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    /// Serializes the record as a CoNLL-U block with only ID and HEAD filled
    /// in, followed by the blank separator line.
    pub fn to_conllu(&self) -> String {
        let mut out = format!("# sent_id = {}\n", self.id);
        for (i, head) in self.heads.iter().enumerate() {
            out.push_str(&format!("{}\t_\t_\t_\t_\t_\t{head}\t_\t_\t_\n", i + 1));
        }
        out.push('\n');
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkipReason {
    MultiRoot,
    NoRoot,
    Cycle,
    BadHead,
    BadLine,
}

impl SkipReason {
    pub const ALL: [SkipReason; 5] = [
        SkipReason::MultiRoot,
        SkipReason::NoRoot,
        SkipReason::Cycle,
        SkipReason::BadHead,
        SkipReason::BadLine,
    ];

    pub fn code(self) -> &'static str {
        match self {
            SkipReason::MultiRoot => "multi-root",
            SkipReason::NoRoot => "no-root",
            SkipReason::Cycle => "cycle",
            SkipReason::BadHead => "bad-head",
            SkipReason::BadLine => "bad-line",
        }
    }
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// A sentence block that was not accepted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkipEntry {
    /// 1-based index of the sentence block.
    pub block: usize,
    /// First line of the block, 1-based.
    pub line: usize,
    pub sent_id: String,
    pub reason: SkipReason,
    pub detail: String,
}

fn heads_to_tree(heads: &[u32]) -> Result<Tree, (SkipReason, String)> {
    let n = heads.len();
    if let Some((i, &h)) = heads.iter().enumerate().find(|(_, &h)| h as usize > n) {
        return Err((
            SkipReason::BadHead,
            format!("token {} has HEAD {h} > {n}", i + 1),
        ));
    }
    let roots = heads.iter().filter(|&&h| h == 0).count();
    match roots {
        0 => return Err((SkipReason::NoRoot, "no token has HEAD 0".into())),
        1 => {}
        r => return Err((SkipReason::MultiRoot, format!("{r} tokens have HEAD 0"))),
    }
    if let Some(i) = heads
        .iter()
        .enumerate()
        .position(|(i, &h)| h as usize == i + 1)
    {
        return Err((
            SkipReason::Cycle,
            format!("token {} is its own head", i + 1),
        ));
    }
    let edges: Vec<(u32, u32)> = heads
        .iter()
        .enumerate()
        .filter(|(_, &h)| h != 0)
        .map(|(i, &h)| (i as u32 + 1, h))
        .collect();
    Tree::new(n, &edges).map_err(|e| {
        let detail = match e {
            TreeError::DuplicateEdge(u, v) => format!("tokens {u} and {v} are each other's head"),
            TreeError::CycleOrDisconnected(u, v) => format!("HEAD link {u}-{v} closes a cycle"),
            other => other.to_string(),
        };
        (SkipReason::Cycle, detail)
    })
}

/// Iterator over the sentence blocks of a CoNLL-U stream.
pub struct ConlluReader<R> {
    lines: io::Lines<R>,
    line_no: usize,
    block: usize,
    done: bool,
}

/// Reads CoNLL-U from `reader`. Each item is an accepted sentence or a skip.
pub fn parse_conllu<R: BufRead>(reader: R) -> ConlluReader<R> {
    ConlluReader {
        lines: reader.lines(),
        line_no: 0,
        block: 0,
        done: false,
    }
}

struct Block {
    first_line: usize,
    id: Option<String>,
    heads: Vec<u32>,
    error: Option<String>,
}

impl<R: BufRead> ConlluReader<R> {
    /// Collects the next non-empty block, or `None` at end of input.
    fn next_block(&mut self) -> io::Result<Option<Block>> {
        let mut block: Option<Block> = None;
        loop {
            let Some(line) = self.lines.next().transpose()? else {
                self.done = true;
                return Ok(block);
            };
            self.line_no += 1;
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() {
                if block.is_some() {
                    return Ok(block);
                }
                continue;
            }
            let b = block.get_or_insert_with(|| Block {
                first_line: self.line_no,
                id: None,
                heads: Vec::new(),
                error: None,
            });
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(rest) = comment.trim_start().strip_prefix("sent_id") {
                    if let Some(value) = rest.trim_start().strip_prefix('=') {
                        b.id = Some(value.trim().to_string());
                    }
                }
                continue;
            }
            if b.error.is_some() {
                continue;
            }
            if let Err(msg) = parse_token_line(line, &mut b.heads) {
                b.error = Some(format!("line {}: {msg}", self.line_no));
            }
        }
    }
}

fn parse_token_line(line: &str, heads: &mut Vec<u32>) -> Result<(), String> {
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 10 {
        return Err(format!(
            "expected 10 tab-separated columns, found {}",
            cols.len()
        ));
    }
    let id = cols[0];
    if id.contains('-') || id.contains('.') {
        return Ok(());
    }
    let id: usize = id
        .parse()
        .map_err(|_| format!("ID {id:?} is not an integer"))?;
    if id != heads.len() + 1 {
        return Err(format!(
            "ID {id} out of sequence, expected {}",
            heads.len() + 1
        ));
    }
    let head = cols[6];
    let head: u32 = head
        .parse()
        .map_err(|_| format!("HEAD {head:?} is not an integer"))?;
    heads.push(head);
    Ok(())
}

impl<R: BufRead> Iterator for ConlluReader<R> {
    type Item = io::Result<Result<SentenceRecord, SkipEntry>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let block = match self.next_block() {
            Ok(Some(b)) => b,
            Ok(None) => return None,
            Err(e) => {
                self.done = true;
                return Some(Err(e));
            }
        };
        self.block += 1;
        let id = block.id.unwrap_or_else(|| format!("s{}", self.block));
        let skip = |reason, detail| SkipEntry {
            block: self.block,
            line: block.first_line,
            sent_id: id.clone(),
            reason,
            detail,
        };
        if let Some(msg) = block.error {
            return Some(Ok(Err(skip(SkipReason::BadLine, msg))));
        }
        Some(Ok(match SentenceRecord::new(id.clone(), block.heads) {
            Ok(record) => Ok(record),
            Err((reason, detail)) => Err(skip(reason, detail)),
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Vec<Result<SentenceRecord, SkipEntry>> {
        parse_conllu(text.as_bytes()).map(|r| r.unwrap()).collect()
    }

    fn sentence(heads: &[&str]) -> String {
        let mut s = String::new();
        for (i, h) in heads.iter().enumerate() {
            s.push_str(&format!("{}\tw\tw\tX\t_\t_\t{h}\tdep\t_\t_\n", i + 1));
        }
        s.push('\n');
        s
    }

    #[test]
    fn two_token_sentence() {
        let out = parse(&sentence(&["2", "0"]));
        let rec = out[0].as_ref().unwrap();
        assert_eq!(rec.n(), 2);
        assert_eq!(rec.tree().edges(), &[(1, 2)]);
        assert_eq!(rec.id, "s1");
    }

    #[test]
    fn skip_reasons() {
        let cases = [
            (vec!["0", "0", "1"], SkipReason::MultiRoot),
            (vec!["2", "1"], SkipReason::NoRoot),
            (vec!["0", "3", "2"], SkipReason::Cycle),
            (vec!["0", "2"], SkipReason::Cycle),
            (vec!["0", "7", "1"], SkipReason::BadHead),
            (vec!["0", "x", "1"], SkipReason::BadLine),
        ];
        for (heads, reason) in cases {
            let out = parse(&sentence(&heads));
            assert_eq!(out.len(), 1);
            assert_eq!(out[0].as_ref().unwrap_err().reason, reason, "{heads:?}");
        }
    }

    #[test]
    fn ignores_ranges_empty_nodes_and_comments() {
        let text = "# newdoc\n# sent_id = a-1\n# text = x y\n1-2\txy\t_\t_\t_\t_\t_\t_\t_\t_\n\
                    1\tx\t_\t_\t_\t_\t2\t_\t_\t_\n2\ty\t_\t_\t_\t_\t0\t_\t_\t_\n\
                    2.1\tz\t_\t_\t_\t_\t_\t_\t2:dep\t_\n\n\n";
        let out = parse(text);
        assert_eq!(out.len(), 1);
        let rec = out[0].as_ref().unwrap();
        assert_eq!(rec.id, "a-1");
        assert_eq!(rec.heads, vec![2, 0]);
    }

    #[test]
    fn malformed_sentence_does_not_stop_the_stream() {
        let text = format!(
            "{}1\tonly-three\tcols\n\n{}",
            sentence(&["0", "1"]),
            sentence(&["2", "0", "2"])
        );
        let out = parse(&text);
        assert_eq!(out.len(), 3);
        assert!(out[0].is_ok());
        let skip = out[1].as_ref().unwrap_err();
        assert_eq!(skip.reason, SkipReason::BadLine);
        assert_eq!(skip.block, 2);
        assert_eq!(skip.line, 4);
        assert!(out[2].is_ok());
    }

    #[test]
    fn out_of_sequence_ids() {
        let text = "1\ta\t_\t_\t_\t_\t0\t_\t_\t_\n3\tb\t_\t_\t_\t_\t1\t_\t_\t_\n";
        let out = parse(text);
        assert_eq!(out[0].as_ref().unwrap_err().reason, SkipReason::BadLine);
    }

    #[test]
    fn round_trip() {
        let rec = SentenceRecord::new("x", vec![4, 9, 4, 0, 2, 3, 9, 4, 3]).unwrap();
        let back = parse(&rec.to_conllu());
        assert_eq!(back[0].as_ref().unwrap(), &rec);
    }
}
