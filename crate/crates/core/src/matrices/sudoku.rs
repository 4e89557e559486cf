use std::fmt;

use crate::error::{Error, Result};
use crate::graphs::parse_header;
use crate::perm::is_permutation;

use super::pi::SPermutationMatrix;

/// An `n² × n²` grid over `1..=n²` in which every row, column and `n × n`
/// block is a permutation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SudokuMatrix {
    n: usize,
    cells: Vec<u16>,
}

impl fmt::Debug for SudokuMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SudokuMatrix(n={})\n{}", self.n, self.to_text())
    }
}

fn side_of(sq: usize) -> Option<usize> {
    let n = (sq as f64).sqrt().round() as usize;
    (n >= 1 && n * n == sq).then_some(n)
}

/// True iff `grid` is `n² × n²` for some `n ≥ 1` and all `3n²` row, column
/// and block constraints hold.
pub fn validate_sudoku(grid: &[Vec<i64>]) -> bool {
    let sq = grid.len();
    let Some(n) = side_of(sq) else { return false };
    if grid.iter().any(|r| r.len() != sq) {
        return false;
    }
    let idx = |v: i64| -> usize {
        if v >= 1 && v as usize <= sq {
            v as usize - 1
        } else {
            usize::MAX
        }
    };
    let rows_ok = grid.iter().all(|r| is_permutation(r.iter().map(|&v| idx(v)), sq));
    let cols_ok = (0..sq).all(|c| is_permutation(grid.iter().map(|r| idx(r[c])), sq));
    let blocks_ok = (0..n).all(|s| {
        (0..n).all(|t| {
            is_permutation(
                (0..sq).map(|i| idx(grid[s * n + i / n][t * n + i % n])),
                sq,
            )
        })
    });
    rows_ok && cols_ok && blocks_ok
}

impl SudokuMatrix {
    pub fn from_rows(grid: &[Vec<i64>]) -> Result<Self> {
        if !validate_sudoku(grid) {
            return Err(Error::Invalid("grid is not a Sudoku matrix".into()));
        }
        let n = side_of(grid.len()).expect("validated");
        Ok(SudokuMatrix {
            n,
            cells: grid.iter().flatten().map(|&v| v as u16).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> usize {
        self.cells[r * self.n * self.n + c] as usize
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.cells
            .chunks(self.n * self.n)
            .map(|r| r.iter().map(|&v| v as i64).collect())
            .collect()
    }

    /// `n²` lines of `n²` space-separated values.
    pub fn to_text(&self) -> String {
        self.cells
            .chunks(self.n * self.n)
            .map(|r| r.iter().map(u16::to_string).collect::<Vec<_>>().join(" ") + "\n")
            .collect()
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let grid = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|t| t.parse::<i64>().map_err(|e| Error::Invalid(format!("{t:?}: {e}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&grid)
    }
}

/// `P = Σ labeling[i] · family[i]`, after checking that the family is
/// pairwise disjoint and the labeling is a permutation of `1..=n²`.
pub fn compose_sudoku(family: &[SPermutationMatrix], labeling: &[usize]) -> Result<SudokuMatrix> {
    let first = family.first().ok_or_else(|| Error::Invalid("empty family".into()))?;
    let n = first.n();
    let sq = n * n;
    if family.len() != sq {
        return Err(Error::Invalid(format!("need {sq} matrices, got {}", family.len())));
    }
    if labeling.len() != sq || !is_permutation(labeling.iter().map(|&l| l.wrapping_sub(1)), sq) {
        return Err(Error::Invalid(format!("labeling must be a permutation of 1..={sq}")));
    }
    for i in 0..sq {
        for j in i + 1..sq {
            if !family[i].is_disjoint(&family[j])? {
                return Err(Error::NotDisjoint(i, j));
            }
        }
    }
    let mut grid = vec![vec![0i64; sq]; sq];
    for (m, &label) in family.iter().zip(labeling) {
        for s in 0..n {
            for t in 0..n {
                let (r, c) = m.one_in_block(s, t);
                grid[r][c] = label as i64;
            }
        }
    }
    SudokuMatrix::from_rows(&grid).map_err(|_| Error::Inconsistent("disjoint family did not compose to a Sudoku matrix".into()))
}

/// Indicator matrices of the values `1..=n²`, in value order.
pub fn decompose_sudoku(p: &SudokuMatrix) -> Vec<SPermutationMatrix> {
    let n = p.n;
    (1..=n * n)
        .map(|value| {
            let positions = (0..n * n)
                .map(|cell| {
                    let (s, t) = (cell / n, cell % n);
                    let i = (0..n * n)
                        .find(|&i| p.get(s * n + i / n, t * n + i % n) == value)
                        .expect("each block holds every value");
                    ((i / n) as u8, (i % n) as u8)
                })
                .collect();
            SPermutationMatrix::from_positions(n, positions).expect("Sudoku indicator is an S-permutation matrix")
        })
        .collect()
}

/// Header `n=<n> count=<c>`, then one matrix per line as block-major symbol codes.
pub fn write_family_file(family: &[SPermutationMatrix]) -> String {
    let n = family.first().map_or(0, |m| m.n());
    let mut out = format!("n={n} count={}\n", family.len());
    for m in family {
        let codes: Vec<String> = m.symbol_codes().iter().map(usize::to_string).collect();
        out.push_str(&codes.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_family_file(text: &str) -> Result<Vec<SPermutationMatrix>> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Invalid("empty family file".into()))?;
    let fields = parse_header(header, &["n", "count"])?;
    let (n, count) = (fields[0], fields[1]);
    let family = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let codes = l
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|e| Error::Invalid(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            SPermutationMatrix::from_symbol_codes(n, &codes)
        })
        .collect::<Result<Vec<_>>>()?;
    if family.len() != count {
        return Err(Error::Invalid(format!("header says {count} matrices, found {}", family.len())));
    }
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Limits;
    use crate::matrices::{list_cliques, DisjointnessGraph};
    use crate::perm::permutations;
    use std::collections::BTreeSet;

    fn grid(rows: &[&[i64]]) -> Vec<Vec<i64>> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn validates_known_grid() {
        let g = grid(&[&[1, 2, 3, 4], &[3, 4, 1, 2], &[2, 1, 4, 3], &[4, 3, 2, 1]]);
        assert!(validate_sudoku(&g));
        let mut bad = g.clone();
        bad[0][1] = 1;
        assert!(!validate_sudoku(&bad));
        // rows and columns fine, blocks not
        let latin = grid(&[&[1, 2, 3, 4], &[2, 3, 4, 1], &[3, 4, 1, 2], &[4, 1, 2, 3]]);
        assert!(!validate_sudoku(&latin));
        assert!(!validate_sudoku(&grid(&[&[1, 2, 3], &[2, 3, 1], &[3, 1, 2]])));
        assert!(!validate_sudoku(&[]));
        assert!(validate_sudoku(&grid(&[&[1]])));
    }

    #[test]
    fn every_n2_sudoku_from_cliques() {
        let g = DisjointnessGraph::build(2, &Limits::default()).unwrap();
        let mut seen = BTreeSet::new();
        for clique in list_cliques(&g, 4).unwrap() {
            let family: Vec<_> = clique.iter().map(|&v| g.vertex(v).clone()).collect();
            for perm in permutations(4) {
                let labeling: Vec<usize> = perm.iter().map(|&x| x as usize + 1).collect();
                let p = compose_sudoku(&family, &labeling).unwrap();
                assert!(validate_sudoku(&p.rows()));
                let parts = decompose_sudoku(&p);
                assert_eq!(parts.len(), 4);
                // value labeling[i] came from family[i]
                for (i, &l) in labeling.iter().enumerate() {
                    assert_eq!(parts[l - 1], family[i]);
                }
                let identity: Vec<usize> = (1..=4).collect();
                assert_eq!(compose_sudoku(&parts, &identity).unwrap(), p);
                seen.insert(p);
            }
        }
        assert_eq!(seen.len(), 288);
    }

    #[test]
    fn composition_errors() {
        let g = DisjointnessGraph::build(2, &Limits::default()).unwrap();
        let clique = &list_cliques(&g, 4).unwrap()[0];
        let mut family: Vec<_> = clique.iter().map(|&v| g.vertex(v).clone()).collect();
        assert!(matches!(compose_sudoku(&family, &[1, 2, 3, 3]), Err(Error::Invalid(_))));
        assert!(matches!(compose_sudoku(&family, &[0, 1, 2, 3]), Err(Error::Invalid(_))));
        family[2] = family[1].clone();
        assert_eq!(compose_sudoku(&family, &[1, 2, 3, 4]), Err(Error::NotDisjoint(1, 2)));
        assert!(compose_sudoku(&family[..3], &[1, 2, 3]).is_err());
    }

    #[test]
    fn text_formats_round_trip() {
        let p = SudokuMatrix::parse_text("1 2 3 4\n3 4 1 2\n2 1 4 3\n4 3 2 1\n").unwrap();
        assert_eq!(p.to_text(), "1 2 3 4\n3 4 1 2\n2 1 4 3\n4 3 2 1\n");
        let family = decompose_sudoku(&p);
        let text = write_family_file(&family);
        assert!(text.starts_with("n=2 count=4\n"));
        assert_eq!(parse_family_file(&text).unwrap(), family);
        assert!(parse_family_file("n=2 count=1\n0 0 0 4\n").is_err());
        assert!(SudokuMatrix::parse_text("1 2\n2 1\n").is_err());
    }
}
