//! Brute-force axiom evaluation straight from the definitions.
//!
//! Order, sums and intersections come from `Subspace` arithmetic rather than
//! the lattice's bitsets. Every search walks its variables in lattice-index
//! order, so the first hit is the lex-least violating tuple.

use std::sync::Arc;

use qmatroid::axioms::AxiomReport;
use qmatroid::{Lattice, Subspace};

pub type Found = Option<Vec<usize>>;

pub struct Oracle {
    pub lat: Arc<Lattice>,
    pub len: usize,
    dim: Vec<usize>,
    le: Vec<Vec<bool>>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    pub lines: Vec<usize>,
    pub coatoms: Vec<usize>,
    pub bottom: usize,
    pub top: usize,
}

impl Oracle {
    pub fn new(q: u32, n: usize) -> Self {
        let lat = Lattice::shared(q, n).unwrap();
        let sp = lat.spaces();
        let len = sp.len();
        let idx = |s: Subspace| lat.index_of(&s).unwrap();
        let le = (0..len).map(|a| (0..len).map(|b| sp[b].contains(&sp[a]).unwrap()).collect()).collect();
        let join = (0..len).map(|a| (0..len).map(|b| idx(sp[a].sum(&sp[b]).unwrap())).collect()).collect();
        let meet = (0..len).map(|a| (0..len).map(|b| idx(sp[a].intersect(&sp[b]).unwrap())).collect()).collect();
        let dim: Vec<usize> = sp.iter().map(Subspace::dim).collect();
        let lines = (0..len).filter(|&i| dim[i] == 1).collect();
        let coatoms = (0..len).filter(|&i| dim[i] + 1 == n).collect();
        let bottom = idx(Subspace::zero(q, n).unwrap());
        let top = idx(Subspace::full(q, n).unwrap());
        Oracle { lat, len, dim, le, join, meet, lines, coatoms, bottom, top }
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn dim(&self, a: usize) -> usize {
        self.dim[a]
    }

    fn members(&self, f: &[bool]) -> Vec<usize> {
        (0..self.len).filter(|&i| f[i]).collect()
    }

    fn lower_covers(&self, a: usize) -> Vec<usize> {
        (0..self.len).filter(|&b| self.le(b, a) && self.dim[b] + 1 == self.dim[a]).collect()
    }

    fn upper_covers(&self, a: usize) -> Vec<usize> {
        (0..self.len).filter(|&b| self.le(a, b) && self.dim[a] + 1 == self.dim[b]).collect()
    }

    /// Members of largest dimension inside `a`.
    fn max_sets(&self, f: &[bool], a: usize) -> Vec<usize> {
        let inside: Vec<usize> = self.members(f).into_iter().filter(|&k| self.le(k, a)).collect();
        let top = inside.iter().map(|&k| self.dim[k]).max();
        inside.into_iter().filter(|&k| Some(self.dim[k]) == top).collect()
    }

    /// Members of least dimension containing `a`.
    fn min_sets(&self, f: &[bool], a: usize) -> Vec<usize> {
        let above: Vec<usize> = self.members(f).into_iter().filter(|&k| self.le(a, k)).collect();
        let low = above.iter().map(|&k| self.dim[k]).min();
        above.into_iter().filter(|&k| Some(self.dim[k]) == low).collect()
    }

    fn strictly_between(&self, f: &[bool], lo: usize, hi: usize) -> bool {
        (0..self.len).any(|m| f[m] && m != lo && m != hi && self.le(lo, m) && self.le(m, hi))
    }

    fn covers_above(&self, f: &[bool], a: usize) -> Vec<usize> {
        (0..self.len)
            .filter(|&k| f[k] && k != a && self.le(a, k) && !self.strictly_between(f, a, k))
            .collect()
    }

    fn covered_below(&self, f: &[bool], a: usize) -> Vec<usize> {
        (0..self.len)
            .filter(|&k| f[k] && k != a && self.le(k, a) && !self.strictly_between(f, k, a))
            .collect()
    }

    fn pairs(&self, xs: &[usize], ys: &[usize], bad: impl Fn(usize, usize) -> bool) -> Found {
        xs.iter().find_map(|&a| ys.iter().find(|&&b| bad(a, b)).map(|&b| vec![a, b]))
    }

    fn distinct_pairs(&self, m: &[usize], bad: impl Fn(usize, usize) -> Found) -> Found {
        m.iter().find_map(|&a| m.iter().filter(|&&b| b != a).find_map(|&b| bad(a, b)))
    }

    pub fn independence(&self, f: &[bool], fourth: &str) -> Vec<(&'static str, Found)> {
        let m = self.members(f);
        let all: Vec<usize> = (0..self.len).collect();
        let ms: Vec<Vec<usize>> = all.iter().map(|&a| self.max_sets(f, a)).collect();
        let md = |a: usize| ms[a].first().map(|&k| self.dim[k]);
        let holds_max = |inside: usize, target: Option<usize>| {
            m.iter().any(|&k| self.le(k, inside) && Some(self.dim[k]) == target)
        };
        let i4 = match fourth {
            "I4" => all.iter().find_map(|&a| {
                all.iter().find_map(|&b| {
                    let target = md(self.join(a, b));
                    ms[a].iter().copied().find_map(|i| {
                        ms[b]
                            .iter()
                            .copied()
                            .find(|&j| !holds_max(self.join(i, j), target))
                            .map(|j| vec![a, b, i, j])
                    })
                })
            }),
            "I4'" => all.iter().find_map(|&a| {
                ms[a].iter().copied().find_map(|i| {
                    all.iter().find(|&&b| !holds_max(self.join(i, b), md(self.join(a, b)))).map(|&b| vec![a, i, b])
                })
            }),
            _ => all.iter().find_map(|&a| {
                ms[a].iter().copied().find_map(|i| {
                    self.lines
                        .iter()
                        .find(|&&x| !holds_max(self.join(i, x), md(self.join(a, x))))
                        .map(|&x| vec![a, i, x])
                })
            }),
        };
        vec![
            ("I1", m.is_empty().then(Vec::new)),
            ("I2", self.pairs(&all, &m, |i, j| !f[i] && self.le(i, j))),
            (
                "I3",
                self.pairs(&m, &m, |i, j| {
                    self.dim[i] < self.dim[j]
                        && !self.lines.iter().any(|&x| self.le(x, j) && !self.le(x, i) && f[self.join(i, x)])
                }),
            ),
            (static_name(fourth), i4),
        ]
    }

    fn max_intersections(&self, m: &[usize], x: usize) -> Vec<usize> {
        let meets: Vec<usize> = m.iter().map(|&b| self.meet(b, x)).collect();
        let top = meets.iter().map(|&k| self.dim[k]).max();
        let mut out: Vec<usize> = meets.into_iter().filter(|&k| Some(self.dim[k]) == top).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn bases(&self, f: &[bool]) -> Vec<(&'static str, Found)> {
        let m = self.members(f);
        let b3 = self.distinct_or_equal(&m, |b1, b2| {
            self.lower_covers(b1)
                .into_iter()
                .find(|&a| {
                    self.le(self.meet(b1, b2), a)
                        && !self.lines.iter().any(|&y| self.le(y, b2) && f[self.join(a, y)])
                })
                .map(|a| vec![b1, b2, a])
        });
        let t: Vec<Vec<usize>> = (0..self.len).map(|x| self.max_intersections(&m, x)).collect();
        let b4 = (0..self.len).find_map(|u| {
            (0..self.len).find_map(|v| {
                let s = &t[self.join(u, v)];
                t[u].iter().copied().find_map(|i| {
                    t[v].iter()
                        .copied()
                        .find(|&j| !s.iter().any(|&k| self.le(k, self.join(i, j))))
                        .map(|j| vec![u, v, i, j])
                })
            })
        });
        vec![
            ("B1", m.is_empty().then(Vec::new)),
            ("B2", self.distinct_pairs(&m, |a, b| self.le(a, b).then(|| vec![a, b]))),
            ("B3", b3),
            ("B4", b4),
        ]
    }

    fn distinct_or_equal(&self, m: &[usize], bad: impl Fn(usize, usize) -> Found) -> Found {
        m.iter().find_map(|&a| m.iter().find_map(|&b| bad(a, b)))
    }

    pub fn circuits(&self, f: &[bool], third: &str) -> Vec<(&'static str, Found)> {
        let m = self.members(f);
        let c3 = match third {
            "C3" => self.distinct_pairs(&m, |c1, c2| {
                let s = self.join(c1, c2);
                self.coatoms
                    .iter()
                    .find(|&&x| !m.iter().any(|&c| self.le(c, self.meet(s, x))))
                    .map(|&x| vec![c1, c2, x])
            }),
            "C3'" => self.distinct_pairs(&m, |c1, c2| {
                let s = self.join(c1, c2);
                self.coatoms.iter().filter(|&&x| !self.le(c1, x) && !self.le(c2, x)).find_map(|&x| {
                    let inside: Vec<usize> = m.iter().copied().filter(|&c| self.le(c, self.meet(s, x))).collect();
                    self.coatoms
                        .iter()
                        .find(|&&y| self.le(c1, y) && !self.le(c2, y) && inside.iter().all(|&c| self.le(c, y)))
                        .map(|&y| vec![c1, c2, x, y])
                })
            }),
            _ => self.distinct_pairs(&m, |c1, c2| {
                let s = self.join(c1, c2);
                self.lines
                    .iter()
                    .find(|&&x| {
                        self.le(x, self.meet(c1, c2)) && m.iter().filter(|&&c| self.le(c, s)).all(|&c| self.le(x, c))
                    })
                    .map(|&x| vec![c1, c2, x])
            }),
        };
        vec![
            ("C1", f[self.bottom].then(|| vec![self.bottom])),
            ("C2", self.distinct_pairs(&m, |a, b| self.le(a, b).then(|| vec![a, b]))),
            (static_name(third), c3),
        ]
    }

    pub fn dependence(&self, f: &[bool]) -> Vec<(&'static str, Found)> {
        let m = self.members(f);
        let all: Vec<usize> = (0..self.len).collect();
        let d3 = self.distinct_or_equal(&m, |d1, d2| {
            if f[self.meet(d1, d2)] {
                return None;
            }
            self.lower_covers(self.join(d1, d2)).into_iter().find(|&d| !f[d]).map(|d| vec![d1, d2, d])
        });
        vec![
            ("D1", f[self.bottom].then(|| vec![self.bottom])),
            ("D2", self.pairs(&m, &all, |a, b| !f[b] && self.le(a, b))),
            ("D3", d3),
        ]
    }

    pub fn flats(&self, f: &[bool]) -> Vec<(&'static str, Found)> {
        let m = self.members(f);
        let f3 = m.iter().find_map(|&a| {
            let covers = self.covers_above(f, a);
            self.lines
                .iter()
                .find(|&&x| !self.le(x, a) && covers.iter().filter(|&&c| self.le(x, c)).count() != 1)
                .map(|&x| vec![a, x])
        });
        vec![
            ("F1", (!f[self.top]).then(Vec::new)),
            ("F2", self.pairs(&m, &m, |a, b| !f[self.meet(a, b)])),
            ("F3", f3),
        ]
    }

    pub fn hyperplanes(&self, f: &[bool], third: &str) -> Vec<(&'static str, Found)> {
        let m = self.members(f);
        let h3 = match third {
            "H3" => self.distinct_pairs(&m, |h1, h2| {
                let base = self.meet(h1, h2);
                self.lines
                    .iter()
                    .find(|&&x| !m.iter().any(|&k| self.le(self.join(base, x), k)))
                    .map(|&x| vec![h1, h2, x])
            }),
            _ => self.distinct_pairs(&m, |h1, h2| {
                let base = self.meet(h1, h2);
                self.lines.iter().filter(|&&x| !self.le(x, h1) && !self.le(x, h2)).find_map(|&x| {
                    let k = self.join(base, x);
                    self.lines
                        .iter()
                        .find(|&&y| {
                            self.le(y, h1)
                                && !self.le(y, h2)
                                && m.iter().filter(|&&c| self.le(k, c)).all(|&c| self.le(y, c))
                        })
                        .map(|&y| vec![h1, h2, x, y])
                })
            }),
        };
        vec![
            ("H1", f[self.top].then(|| vec![self.top])),
            ("H2", self.distinct_pairs(&m, |a, b| self.le(a, b).then(|| vec![a, b]))),
            (static_name(third), h3),
        ]
    }

    pub fn open(&self, f: &[bool], third: &str) -> Vec<(&'static str, Found)> {
        let m = self.members(f);
        let o3 = match third {
            "O3" => m.iter().find_map(|&o| {
                let covered = self.covered_below(f, o);
                self.coatoms
                    .iter()
                    .find(|&&x| !self.le(o, x) && covered.iter().filter(|&&c| self.le(c, x)).count() != 1)
                    .map(|&x| vec![o, x])
            }),
            _ => m
                .iter()
                .copied()
                .find(|&o| {
                    let covered = self.covered_below(f, o);
                    match covered.split_first() {
                        None => o != self.bottom,
                        Some((&c, rest)) => rest.iter().fold(c, |acc, &d| self.meet(acc, d)) != self.bottom,
                    }
                })
                .map(|o| vec![o]),
        };
        vec![
            ("O1", (!f[self.bottom]).then(Vec::new)),
            ("O2", self.pairs(&m, &m, |a, b| !f[self.join(a, b)])),
            (static_name(third), o3),
        ]
    }

    pub fn spanning(&self, f: &[bool]) -> Vec<(&'static str, Found)> {
        let m = self.members(f);
        let all: Vec<usize> = (0..self.len).collect();
        let ms: Vec<Vec<usize>> = all.iter().map(|&a| self.min_sets(f, a)).collect();
        let mu = |a: usize| ms[a].first().map(|&k| self.dim[k]);
        let s4 = all.iter().find_map(|&a| {
            all.iter().find_map(|&b| {
                let target = mu(self.meet(a, b));
                ms[a].iter().copied().find_map(|i| {
                    ms[b]
                        .iter()
                        .copied()
                        .find(|&j| !m.iter().any(|&k| self.le(self.meet(i, j), k) && Some(self.dim[k]) == target))
                        .map(|j| vec![a, b, i, j])
                })
            })
        });
        vec![
            ("S1", (!f[self.top]).then(Vec::new)),
            ("S2", self.pairs(&all, &m, |i, j| !f[i] && self.le(j, i))),
            (
                "S3",
                self.pairs(&m, &m, |i, j| {
                    self.dim[j] < self.dim[i]
                        && !self.coatoms.iter().any(|&x| self.le(j, x) && !self.le(i, x) && f[self.meet(i, x)])
                }),
            ),
            ("S4", s4),
        ]
    }

    pub fn nonspanning(&self, f: &[bool]) -> Vec<(&'static str, Found)> {
        let m = self.members(f);
        let all: Vec<usize> = (0..self.len).collect();
        let n3 = self.distinct_or_equal(&m, |n1, n2| {
            if f[self.join(n1, n2)] {
                return None;
            }
            self.upper_covers(self.meet(n1, n2)).into_iter().find(|&k| !f[k]).map(|k| vec![n1, n2, k])
        });
        vec![
            ("N1", f[self.top].then(|| vec![self.top])),
            ("N2", self.pairs(&m, &all, |a, b| !f[b] && self.le(b, a))),
            ("N3", n3),
        ]
    }

    pub fn rank_global(&self, r: &[i64]) -> Vec<(&'static str, Found)> {
        let all: Vec<usize> = (0..self.len).collect();
        vec![
            ("R1", all.iter().find(|&&a| r[a] < 0 || r[a] > self.dim[a] as i64).map(|&a| vec![a])),
            ("R2", self.pairs(&all, &all, |a, b| self.le(a, b) && r[a] > r[b])),
            ("R3", self.pairs(&all, &all, |a, b| r[self.join(a, b)] + r[self.meet(a, b)] > r[a] + r[b])),
        ]
    }

    pub fn rank_local(&self, r: &[i64]) -> Vec<(&'static str, Found)> {
        let bad3 = |a: usize, x: usize, y: usize| {
            let ax = self.join(a, x);
            r[a] == r[ax] && r[a] == r[self.join(a, y)] && r[self.join(ax, y)] != r[a]
        };
        vec![
            ("R1'", (r[self.bottom] != 0).then(|| vec![self.bottom])),
            (
                "R2'",
                (0..self.len).find_map(|a| {
                    self.lines
                        .iter()
                        .find(|&&x| {
                            let ax = r[self.join(a, x)];
                            ax < r[a] || ax > r[a] + 1
                        })
                        .map(|&x| vec![a, x])
                }),
            ),
            ("R3'", self.triples(bad3)),
        ]
    }

    fn triples(&self, bad: impl Fn(usize, usize, usize) -> bool) -> Found {
        (0..self.len).find_map(|a| {
            self.lines
                .iter()
                .find_map(|&x| self.lines.iter().find(|&&y| bad(a, x, y)).map(|&y| vec![a, x, y]))
        })
    }

    pub fn closure(&self, cl: &[usize]) -> Vec<(&'static str, Found)> {
        let all: Vec<usize> = (0..self.len).collect();
        let bad4 = |a: usize, x: usize, y: usize| {
            self.le(y, cl[self.join(a, x)]) && !self.le(y, cl[a]) && !self.le(x, cl[self.join(a, y)])
        };
        vec![
            ("Cl1", all.iter().find(|&&a| !self.le(a, cl[a])).map(|&a| vec![a])),
            ("Cl2", self.pairs(&all, &all, |a, b| self.le(a, b) && !self.le(cl[a], cl[b]))),
            ("Cl3", all.iter().find(|&&a| cl[cl[a]] != cl[a]).map(|&a| vec![a])),
            ("Cl4", self.triples(bad4)),
        ]
    }
}

fn static_name(s: &str) -> &'static str {
    ["I4", "I4'", "I4''", "C3", "C3'", "C3bar", "H3", "H3'", "O3", "O3bar"]
        .into_iter()
        .find(|&n| n == s)
        .expect("unknown variant")
}

/// Lattice indices of a verdict's witness entries, in order.
pub fn witness_indices(lat: &Lattice, report: &AxiomReport, axiom: &str) -> Option<Vec<usize>> {
    let v = report.verdict(axiom)?;
    v.witness
        .as_ref()
        .map(|w| w.entries.iter().map(|(_, s)| lat.index_of(s).unwrap()).collect())
}

/// Asserts that the report agrees with the oracle axiom by axiom, including
/// the exact lex-least witness.
pub fn assert_agrees(lat: &Lattice, report: &AxiomReport, expected: &[(&str, Found)], label: &str) {
    assert_eq!(report.verdicts.len(), expected.len(), "{label}: axiom count");
    for (v, (name, found)) in report.verdicts.iter().zip(expected) {
        assert_eq!(&v.axiom, name, "{label}");
        assert_eq!(v.pass, found.is_none(), "{label}: {name} verdict, library witness {:?}", v.witness);
        if let Some(t) = found {
            assert_eq!(witness_indices(lat, report, name).as_ref(), Some(t), "{label}: {name} witness");
        }
    }
}
