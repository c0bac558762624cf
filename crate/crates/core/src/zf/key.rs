use std::fmt;

/// Index value of an iterative set: one element of the index type `A` in `sup(A, f)`.
///
/// Keys are finite trees compared structurally. The derived ordering is the
/// fixed key order used everywhere a witness has to be picked deterministically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Key {
    Atom(u64),
    Pair(Box<Key>, Box<Key>),
    Inl(Box<Key>),
    Inr(Box<Key>),
    Numeral(u64),
    /// Graph of a finite function, sorted by argument with no repeated argument.
    FunTable(Vec<(Key, Key)>),
}

impl Key {
    pub fn pair(a: Key, b: Key) -> Key {
        Key::Pair(Box::new(a), Box::new(b))
    }

    pub fn inl(k: Key) -> Key {
        Key::Inl(Box::new(k))
    }

    pub fn inr(k: Key) -> Key {
        Key::Inr(Box::new(k))
    }

    /// Builds a function table, sorting entries by argument.
    ///
    /// Returns `None` when two entries share an argument.
    pub fn fun_table(mut entries: Vec<(Key, Key)>) -> Option<Key> {
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return None;
        }
        Some(Key::FunTable(entries))
    }

    pub fn as_pair(&self) -> Option<(&Key, &Key)> {
        match self {
            Key::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Looks up the value a function-table key assigns to `arg`.
    pub fn apply(&self, arg: &Key) -> Option<&Key> {
        match self {
            Key::FunTable(entries) => entries
                .binary_search_by(|(k, _)| k.cmp(arg))
                .ok()
                .map(|i| &entries[i].1),
            _ => None,
        }
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Key::Atom(i) => write!(f, "a{i}"),
            Key::Pair(a, b) => write!(f, "({a},{b})"),
            Key::Inl(k) => write!(f, "inl {k}"),
            Key::Inr(k) => write!(f, "inr {k}"),
            Key::Numeral(n) => write!(f, "#{n}"),
            Key::FunTable(entries) => {
                write!(f, "[")?;
                for (i, (a, b)) in entries.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}->{b}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// Atom keys `a0 .. a(n-1)`, the default presentation of a finite index type.
pub fn atoms(n: usize) -> Vec<Key> {
    (0..n as u64).map(Key::Atom).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fun_table_rejects_duplicate_arguments() {
        let k = Key::fun_table(vec![(Key::Atom(0), Key::Atom(1)), (Key::Atom(0), Key::Atom(2))]);
        assert!(k.is_none());
    }

    #[test]
    fn fun_table_sorts_and_applies() {
        let k = Key::fun_table(vec![(Key::Atom(1), Key::Numeral(7)), (Key::Atom(0), Key::Numeral(3))]).unwrap();
        assert_eq!(k.apply(&Key::Atom(0)), Some(&Key::Numeral(3)));
        assert_eq!(k.apply(&Key::Atom(1)), Some(&Key::Numeral(7)));
        assert_eq!(k.apply(&Key::Atom(2)), None);
        assert_eq!(k.to_string(), "[a0->#3, a1->#7]");
    }
}
