use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{PresentedCategory, Word};
use crate::error::{Error, Result};
use crate::union_find::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomClass {
    /// Shortest, then lexicographically least, member.
    pub representative: Word,
    pub words: Vec<Word>,
}

/// Equivalence classes of the words from `src` to `tgt`. When `partial` is
/// set only words up to `max_len` were considered, so classes may be split
/// that a longer rewrite would join.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "EntryRepr")]
pub struct HomEntry {
    pub src: usize,
    pub tgt: usize,
    pub classes: Vec<HomClass>,
    pub partial: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_len: Option<usize>,
    #[serde(skip)]
    lookup: HashMap<Word, usize>,
}

#[derive(Deserialize)]
struct EntryRepr {
    src: usize,
    tgt: usize,
    classes: Vec<HomClass>,
    #[serde(default)]
    max_len: Option<usize>,
}

impl From<EntryRepr> for HomEntry {
    fn from(r: EntryRepr) -> Self {
        Self::new(r.src, r.tgt, r.classes, r.max_len)
    }
}

impl HomEntry {
    fn new(src: usize, tgt: usize, classes: Vec<HomClass>, max_len: Option<usize>) -> Self {
        let lookup = classes
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.words.iter().map(move |w| (w.clone(), i)))
            .collect();
        Self { src, tgt, classes, partial: max_len.is_some(), max_len, lookup }
    }

    pub fn class_of(&self, word: &[usize]) -> Option<usize> {
        self.lookup.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "TableRepr")]
pub struct HomSetTable {
    pub partial: bool,
    pub entries: Vec<HomEntry>,
    #[serde(skip)]
    index: BTreeMap<(usize, usize), usize>,
}

#[derive(Deserialize)]
struct TableRepr {
    entries: Vec<HomEntry>,
}

impl From<TableRepr> for HomSetTable {
    fn from(r: TableRepr) -> Self {
        Self::new(r.entries)
    }
}

impl HomSetTable {
    fn new(entries: Vec<HomEntry>) -> Self {
        let partial = entries.iter().any(|e| e.partial);
        let index = entries.iter().enumerate().map(|(i, e)| ((e.src, e.tgt), i)).collect();
        Self { partial, entries, index }
    }

    pub fn entry(&self, x: usize, y: usize) -> Option<&HomEntry> {
        self.index.get(&(x, y)).map(|&i| &self.entries[i])
    }

    /// Number of classes in `hom(x, y)`; zero when there is no path.
    pub fn count(&self, x: usize, y: usize) -> usize {
        self.entry(x, y).map_or(0, HomEntry::len)
    }

    pub fn class_of(&self, x: usize, y: usize, word: &[usize]) -> Option<usize> {
        self.entry(x, y)?.class_of(word)
    }

    /// Re-applies every relation in both directions at every position and
    /// checks that no step leaves a class. Steps that leave the word bound
    /// of a partial table are ignored.
    pub fn is_closed_under(&self, p: &PresentedCategory) -> bool {
        self.entries.iter().all(|e| {
            e.classes.iter().enumerate().all(|(i, class)| {
                class.words.iter().all(|w| {
                    rewrites(p, e.src, w).into_iter().all(|v| match e.class_of(&v) {
                        Some(j) => j == i,
                        None => e.max_len.is_some_and(|m| v.len() > m),
                    })
                })
            })
        })
    }
}

/// All words obtained from `w` by one relation step in either direction.
fn rewrites(p: &PresentedCategory, start: usize, w: &[usize]) -> Vec<Word> {
    let objects = p.word_objects(start, w);
    let mut out = Vec::new();
    for r in &p.relations {
        for (from, to) in [(&r.lhs, &r.rhs), (&r.rhs, &r.lhs)] {
            if from.len() > w.len() {
                continue;
            }
            for pos in 0..=w.len() - from.len() {
                if objects[pos] != r.src || w[pos..pos + from.len()] != from[..] {
                    continue;
                }
                let mut v = w[..pos].to_vec();
                v.extend_from_slice(to);
                v.extend_from_slice(&w[pos + from.len()..]);
                out.push(v);
            }
        }
    }
    out
}

fn words_from(p: &PresentedCategory, x: usize, max_len: Option<usize>) -> Vec<(usize, Word)> {
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); p.num_objects()];
    for (i, g) in p.generators.iter().enumerate() {
        out_edges[g.src].push(i);
    }
    let mut out = Vec::new();
    let mut stack = vec![(x, Vec::new())];
    while let Some((at, word)) = stack.pop() {
        if max_len.is_none_or(|m| word.len() < m) {
            for &g in out_edges[at].iter().rev() {
                let mut next = word.clone();
                next.push(g);
                stack.push((p.generators[g].tgt, next));
            }
        }
        out.push((at, word));
    }
    out
}

fn classify(p: &PresentedCategory, x: usize, y: usize, mut words: Vec<Word>, max_len: Option<usize>) -> HomEntry {
    words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut uf = UnionFind::new(words.len());
    for (i, w) in words.iter().enumerate() {
        for v in rewrites(p, x, w) {
            if let Some(&j) = index.get(&v) {
                uf.union(i, j);
            }
        }
    }
    // representatives are smallest indices, i.e. shortest-then-lex words
    let classes = uf
        .classes()
        .into_iter()
        .map(|members| HomClass {
            representative: words[members[0]].clone(),
            words: members.into_iter().map(|i| words[i].clone()).collect(),
        })
        .collect();
    HomEntry::new(x, y, classes, max_len)
}

/// Exact hom-sets of `P(X)` for a loop-free presentation: every path is
/// enumerated and the relation closure computed by union-find.
pub fn hom_sets(p: &PresentedCategory) -> Result<HomSetTable> {
    if !p.is_loop_free() {
        return Err(Error::NotLoopFree);
    }
    Ok(table(p, None))
}

fn table(p: &PresentedCategory, max_len: Option<usize>) -> HomSetTable {
    let mut entries = Vec::new();
    for x in 0..p.num_objects() {
        let mut by_target: BTreeMap<usize, Vec<Word>> = BTreeMap::new();
        for (y, w) in words_from(p, x, max_len) {
            by_target.entry(y).or_default().push(w);
        }
        for (y, words) in by_target {
            entries.push(classify(p, x, y, words, max_len));
        }
    }
    HomSetTable::new(entries)
}

/// Classes among the words of length at most `max_len` from `x` to `y`,
/// closed under relation steps that stay within the bound. Always partial.
pub fn bounded_hom_classes(p: &PresentedCategory, x: usize, y: usize, max_len: usize) -> Result<HomEntry> {
    if max_len == 0 {
        return Err(Error::Precondition("max_len must be at least 1".into()));
    }
    if x >= p.num_objects() || y >= p.num_objects() {
        return Err(Error::Precondition("unknown object".into()));
    }
    let words = words_from(p, x, Some(max_len)).into_iter().filter(|(t, _)| *t == y).map(|(_, w)| w).collect();
    Ok(classify(p, x, y, words, Some(max_len)))
}

/// [`bounded_hom_classes`] for every pair of objects.
pub fn bounded_table(p: &PresentedCategory, max_len: usize) -> Result<HomSetTable> {
    if max_len == 0 {
        return Err(Error::Precondition("max_len must be at least 1".into()));
    }
    Ok(table(p, Some(max_len)))
}
