use std::fmt;
use std::str::FromStr;

/// A set partition of `{1..n}`; blocks sorted internally and by least
/// element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition {
    n: u16,
    blocks: Vec<Vec<u16>>,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("invalid partition: {0}")]
pub struct PartitionError(pub String);

impl SetPartition {
    pub fn new(n: u16, mut blocks: Vec<Vec<u16>>) -> Result<Self, PartitionError> {
        let mut seen = vec![false; n as usize + 1];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(PartitionError("empty block".into()));
            }
            b.sort_unstable();
            for &x in b.iter() {
                if x == 0 || x > n {
                    return Err(PartitionError(format!("element {x} outside 1..={n}")));
                }
                if seen[x as usize] {
                    return Err(PartitionError(format!("element {x} appears twice")));
                }
                seen[x as usize] = true;
            }
        }
        if let Some(x) = (1..=n).find(|&x| !seen[x as usize]) {
            return Err(PartitionError(format!("element {x} is not covered")));
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    /// `{{1},{2},…,{n}}`.
    pub fn finest(n: u16) -> Self {
        SetPartition {
            n,
            blocks: (1..=n).map(|i| vec![i]).collect(),
        }
    }

    /// Parses `"{1,3}{2}"`; `n` is the largest element.
    pub fn parse(text: &str) -> Result<Self, PartitionError> {
        let mut blocks = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('{') else {
                return Err(PartitionError(format!("expected '{{' at '{rest}'")));
            };
            let Some(close) = body.find('}') else {
                return Err(PartitionError("unclosed block".into()));
            };
            let block = body[..close]
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u16>()
                        .map_err(|_| PartitionError(format!("bad element '{}'", t.trim())))
                })
                .collect::<Result<Vec<_>, _>>()?;
            blocks.push(block);
            rest = body[close + 1..].trim_start();
        }
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        if n == 0 {
            return Err(PartitionError("empty partition".into()));
        }
        Self::new(n, blocks)
    }

    /// All set partitions of `{1..n}`, in a fixed order.
    pub fn all(n: u16) -> Vec<SetPartition> {
        fn go(x: u16, n: u16, cur: &mut Vec<Vec<u16>>, out: &mut Vec<SetPartition>) {
            if x > n {
                out.push(SetPartition::new(n, cur.clone()).expect("valid by construction"));
                return;
            }
            for i in 0..cur.len() {
                cur[i].push(x);
                go(x + 1, n, cur, out);
                cur[i].pop();
            }
            cur.push(vec![x]);
            go(x + 1, n, cur, out);
            cur.pop();
        }
        let mut out = Vec::new();
        go(1, n, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    pub fn n(&self) -> u16 {
        self.n
    }

    /// Number of blocks.
    pub fn m(&self) -> u16 {
        self.blocks.len() as u16
    }

    pub fn blocks(&self) -> &[Vec<u16>] {
        &self.blocks
    }

    /// 1-based index of the block containing `x`.
    pub fn block_of(&self, x: u16) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&x))
            .expect("element in range")
            + 1
    }

    /// Partition of `{1..n-1}` obtained by deleting `n`.
    pub fn without_last(&self) -> SetPartition {
        let blocks: Vec<Vec<u16>> = self
            .blocks
            .iter()
            .map(|b| b.iter().copied().filter(|&x| x != self.n).collect::<Vec<_>>())
            .filter(|b| !b.is_empty())
            .collect();
        SetPartition::new(self.n - 1, blocks).expect("restriction stays valid")
    }

    /// Block indices grouped by block size; the symmetry group of the
    /// partial diagonal permutes blocks inside each group.
    pub fn symmetry_groups(&self) -> Vec<Vec<u16>> {
        let mut by_size: std::collections::BTreeMap<usize, Vec<u16>> = Default::default();
        for (i, b) in self.blocks.iter().enumerate() {
            by_size.entry(b.len()).or_default().push(i as u16 + 1);
        }
        by_size.into_values().collect()
    }

    /// The partition of `{1..Σ sizes}` whose blocks are consecutive runs
    /// of the given sizes, in order.
    pub fn from_sizes(sizes: &[u16]) -> SetPartition {
        let mut next = 1;
        let blocks = sizes
            .iter()
            .map(|&k| {
                let run: Vec<u16> = (next..next + k).collect();
                next += k;
                run
            })
            .collect();
        SetPartition { n: next - 1, blocks }
    }

    /// Number of blocks with at least two elements.
    pub fn large_blocks(&self) -> usize {
        self.blocks.iter().filter(|b| b.len() >= 2).count()
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            let items: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for SetPartition {
    type Err = PartitionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=5).map(|n| SetPartition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52]);
    }

    #[test]
    fn parse_and_print() {
        let p = SetPartition::parse("{2}{3,1}").unwrap();
        assert_eq!(p.to_string(), "{1,3}{2}");
        assert_eq!(p.m(), 2);
        assert_eq!(p.block_of(3), 1);
        assert_eq!(p.without_last().to_string(), "{1}{2}");
        assert!(SetPartition::parse("{1,2}{2}").is_err());
        assert!(SetPartition::parse("{1}{3}").is_err());
        assert!(SetPartition::parse("{1,x}").is_err());
        assert!(SetPartition::parse("{1").is_err());
    }

    #[test]
    fn symmetry_groups() {
        let p = SetPartition::parse("{1,2}{3}{4}{5,6}").unwrap();
        assert_eq!(p.symmetry_groups(), vec![vec![2, 3], vec![1, 4]]);
        assert_eq!(p.large_blocks(), 2);
    }
}
