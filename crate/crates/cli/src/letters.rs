//! Word parsing with letter compaction.
//!
//! Words on the command line may use any letters. When every generator
//! already fits the requested rank the words are taken literally;
//! otherwise the distinct generators are sorted and renamed `a`, `b`, …
//! in that order, so `xx` in rank 1 means `aa`.

use std::collections::{BTreeMap, BTreeSet};

use relhom::pair::letter_name;
use relhom::Word;
use serde_json::Value;

/// Parses `texts` for a wedge of `genus` circles. Returns the words and
/// the renaming as a JSON object from input letter to generator letter.
pub fn compact_words(texts: &[&str], genus: usize) -> Result<(Vec<Word>, Value), String> {
    let words: Vec<Word> = texts
        .iter()
        .map(|t| {
            t.parse::<Word>()
                .map_err(|e| format!("cannot parse word {t:?}: {e}"))
        })
        .collect::<Result<_, _>>()?;
    let used: BTreeSet<usize> = words
        .iter()
        .flat_map(|w| w.letters().iter().map(|l| l.generator()))
        .collect();
    let literal = used.iter().all(|&g| g <= genus);
    if !literal && used.len() > genus {
        return Err(format!(
            "the words use {} distinct letters but the wedge has only {genus} circles",
            used.len()
        ));
    }
    let rename: BTreeMap<usize, usize> = used
        .iter()
        .enumerate()
        .map(|(i, &g)| (g, if literal { g } else { i + 1 }))
        .collect();
    let words = words
        .iter()
        .map(|w| {
            w.substitute(|g| rename.get(&g).copied())
                .map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    let mapping = rename
        .iter()
        .map(|(&from, &to)| (letter_name(from), Value::from(letter_name(to))))
        .collect();
    Ok((words, Value::Object(mapping)))
}
