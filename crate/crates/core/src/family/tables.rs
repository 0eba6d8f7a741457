//! Expected component tables of the family, as equality chains.
//!
//! A chain reads `value = c_1 T_1 = c_2 T_2 = ...`. Each entry is written
//! `[-][p/q][e]NAME[digits]`, e.g. `-1/2eF433` for `-½εF_433`; the digits
//! are 1-based indices. Values are polynomials in `λ1, λ2, ε`.

use std::collections::BTreeSet;

use crate::scalar::Scalar;

/// `(num, den, power of ε, power of λ1, power of λ2)`.
pub type Term = (i64, i64, u32, u32, u32);
pub type Poly = &'static [Term];

#[derive(Clone, Copy, Debug)]
pub enum Value {
    Scalar(Poly),
    Vector([Poly; 4]),
    /// A scalar polynomial times `f♯ = -8ελ2 X1 + 8λ2 X2 + 8ελ1 X3 - 8λ1 X4`.
    FSharp(Poly),
}

const F_SHARP: [Poly; 4] = [&[(-8, 1, 1, 0, 1)], &[(8, 1, 0, 0, 1)], &[(8, 1, 1, 1, 0)], &[(-8, 1, 0, 1, 0)]];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vals {
    pub l1: Scalar,
    pub l2: Scalar,
    pub e: Scalar,
}

fn pow(x: &Scalar, k: u32) -> Scalar {
    (0..k).map(|_| x.clone()).product()
}

pub fn eval_poly(poly: Poly, v: &Vals) -> Scalar {
    poly.iter()
        .map(|&(num, den, pe, p1, p2)| {
            Scalar::ratio(num, den) * pow(&v.e, pe) * pow(&v.l1, p1) * pow(&v.l2, p2)
        })
        .sum()
}

impl Value {
    pub fn eval(&self, v: &Vals) -> Vec<Scalar> {
        match self {
            Value::Scalar(p) => vec![eval_poly(p, v)],
            Value::Vector(ps) => ps.iter().map(|p| eval_poly(p, v)).collect(),
            Value::FSharp(p) => {
                let c = eval_poly(p, v);
                F_SHARP.iter().map(|q| &c * eval_poly(q, v)).collect()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub coef: Scalar,
    pub eps: bool,
    pub name: String,
    /// 0-based.
    pub idx: Vec<usize>,
    pub label: String,
}

impl Entry {
    pub fn parse(token: &str) -> Entry {
        let label = token.to_string();
        let mut rest = token;
        let negative = rest.starts_with('-');
        if negative {
            rest = &rest[1..];
        }
        let digits_end = rest.find(|c: char| !c.is_ascii_digit() && c != '/').unwrap_or(rest.len());
        let coef = if digits_end == 0 {
            Scalar::one()
        } else {
            rest[..digits_end].parse().expect("table coefficient")
        };
        rest = &rest[digits_end..];
        let eps = rest.starts_with('e');
        if eps {
            rest = &rest[1..];
        }
        let name_end = rest.find(|c: char| c.is_ascii_digit()).unwrap_or(rest.len());
        let name = rest[..name_end].to_string();
        let idx = rest[name_end..]
            .bytes()
            .map(|b| (b - b'1') as usize)
            .collect();
        Entry {
            coef: if negative { -coef } else { coef },
            eps,
            name,
            idx,
            label,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Chain {
    pub value: Value,
    pub entries: Vec<Entry>,
}

/// Index symmetry `t[perm(ix)] = sign * t[ix]` used to extend the listed set.
pub type Symmetry = (&'static [usize], i64);

#[derive(Clone, Debug)]
pub struct Table {
    /// Short descriptive key, stable for reports.
    pub name: &'static str,
    pub chains: Vec<Chain>,
    /// Tensors whose components not listed (up to the symmetries) vanish.
    pub rest_zero: Vec<(&'static str, &'static [Symmetry])>,
    /// `(a, b)`: every component of `a` equals `ε` times that of `b`.
    pub relations: Vec<(&'static str, &'static str)>,
}

impl Table {
    /// Listed index tuples of `name`, closed under `symmetries`.
    pub fn covered(&self, name: &str, symmetries: &[Symmetry]) -> BTreeSet<Vec<usize>> {
        let mut set: BTreeSet<Vec<usize>> = self
            .chains
            .iter()
            .flat_map(|c| c.entries.iter())
            .filter(|e| e.name == name)
            .map(|e| e.idx.clone())
            .collect();
        loop {
            let before = set.len();
            let images: Vec<Vec<usize>> = set
                .iter()
                .flat_map(|ix| {
                    symmetries
                        .iter()
                        .map(move |(perm, _)| perm.iter().map(|&p| ix[p]).collect::<Vec<_>>())
                })
                .collect();
            set.extend(images);
            if set.len() == before {
                return set;
            }
        }
    }

    /// Negates the coefficient of one entry; used by the self-test.
    pub fn perturb(&mut self, label: &str) -> bool {
        for chain in &mut self.chains {
            for e in &mut chain.entries {
                if e.label == label {
                    e.coef = -&e.coef;
                    return true;
                }
            }
        }
        false
    }
}

fn chain(value: Value, entries: &str) -> Chain {
    Chain {
        value,
        entries: entries
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(Entry::parse)
            .collect(),
    }
}

const ANTI_12: &[Symmetry] = &[(&[1, 0, 2], -1)];
const ANTI_12_4: &[Symmetry] = &[(&[1, 0, 2, 3], -1)];
const CURVATURE: &[Symmetry] = &[(&[1, 0, 2, 3], -1), (&[0, 1, 3, 2], -1), (&[2, 3, 0, 1], 1)];
const NONE: &[Symmetry] = &[];

pub fn paper_tables() -> Vec<Table> {
    use Value::{FSharp, Scalar as S, Vector as V};
    vec![
        Table {
            name: "nabla",
            chains: vec![
                chain(
                    V([&[], &[(-2, 1, 0, 0, 1)], &[(-1, 1, 1, 1, 0)], &[(1, 1, 0, 1, 0)]]),
                    "nabla11, enabla21, -etnabla12, -tnabla22",
                ),
                chain(
                    V([&[(2, 1, 0, 0, 1)], &[], &[(-1, 1, 0, 1, 0)], &[(1, 1, 1, 1, 0)]]),
                    "nabla12, enabla22, -etnabla11, -tnabla21",
                ),
                chain(
                    V([&[(-1, 1, 1, 1, 0)], &[(-1, 1, 0, 1, 0)], &[], &[]]),
                    "nabla13, -enabla14, enabla23, -nabla24, tnabla13, -etnabla14, etnabla23, -tnabla24",
                ),
                chain(
                    V([&[], &[], &[(-1, 1, 1, 0, 1)], &[(-1, 1, 0, 0, 1)]]),
                    "nabla31, -enabla32, enabla41, -nabla42, tnabla31, -etnabla32, etnabla41, -tnabla42",
                ),
                chain(
                    V([&[(-1, 1, 1, 0, 1)], &[(1, 1, 0, 0, 1)], &[], &[(-2, 1, 0, 1, 0)]]),
                    "nabla33, enabla43, -etnabla34, -tnabla44",
                ),
                chain(
                    V([&[(-1, 1, 0, 0, 1)], &[(1, 1, 1, 0, 1)], &[(2, 1, 0, 1, 0)], &[]]),
                    "nabla34, enabla44, -etnabla33, -tnabla43",
                ),
            ],
            rest_zero: vec![("nabla", NONE), ("tnabla", NONE)],
            relations: vec![],
        },
        Table {
            name: "Phi",
            chains: vec![
                chain(
                    V([&[(-2, 1, 1, 0, 1)], &[(2, 1, 0, 0, 1)], &[(2, 1, 1, 1, 0)], &[(-2, 1, 0, 1, 0)]]),
                    "1/4fsharp, Phi11, ePhi12, ePhi21, Phi22, -Phi33, -ePhi34, -ePhi43, -Phi44",
                ),
                chain(S(&[(-8, 1, 1, 0, 1)]), "f1, -ef2, efstar1, -fstar2"),
                chain(S(&[(-8, 1, 1, 1, 0)]), "f3, -ef4, efstar3, -fstar4"),
            ],
            rest_zero: vec![("Phi", NONE), ("f", NONE), ("fstar", NONE)],
            relations: vec![],
        },
        Table {
            name: "F",
            chains: vec![
                chain(
                    S(&[(2, 1, 0, 1, 0)]),
                    "F113, -F124, F131, -F142, -eF114, eF123, eF132, -eF141, eF213, -eF224, eF231, \
                     -eF242, -F214, F223, F232, -F241, -1/2F333, 1/2F344, -1/2eF433, 1/2eF444",
                ),
                chain(
                    S(&[(2, 1, 0, 0, 1)]),
                    "-F313, F324, -F331, F342, -eF314, eF323, eF332, -eF341, -eF413, eF424, -eF431, \
                     eF442, -F414, F423, F432, -F441, 1/2F111, -1/2F122, 1/2eF211, -1/2eF222",
                ),
            ],
            rest_zero: vec![("F", NONE)],
            relations: vec![("tF", "F")],
        },
        Table {
            name: "norm",
            chains: vec![chain(
                S(&[(-128, 1, 0, 2, 0), (128, 1, 0, 0, 2)]),
                "snorm, -etsnorm",
            )],
            rest_zero: vec![],
            relations: vec![],
        },
        Table {
            name: "theta",
            chains: vec![
                chain(
                    S(&[(8, 1, 0, 0, 1)]),
                    "theta1, -etheta2, ethetastar1, -thetastar2, ttheta1, -ettheta2, etthetastar1, -tthetastar2",
                ),
                chain(
                    S(&[(8, 1, 0, 1, 0)]),
                    "theta3, -etheta4, ethetastar3, -thetastar4, ttheta3, -ettheta4, etthetastar3, -tthetastar4",
                ),
            ],
            rest_zero: vec![],
            relations: vec![],
        },
        Table {
            name: "R",
            chains: vec![
                chain(S(&[(-8, 1, 0, 0, 2)]), "R1221, -2eR1341, -2eR2342"),
                chain(
                    S(&[(4, 1, 0, 0, 2), (-4, 1, 0, 2, 0)]),
                    "R1331, R1441, R2332, R2442",
                ),
                chain(S(&[(8, 1, 0, 2, 0)]), "R3443, -2eR3123, -2eR4124"),
                chain(S(&[(-4, 1, 0, 1, 1)]), "R1241, R2132, -R3243, -R4134"),
                chain(S(&[(4, 1, 1, 1, 1)]), "R1231, R2142, -R3143, -R4234"),
            ],
            rest_zero: vec![("R", CURVATURE)],
            relations: vec![("tR", "R")],
        },
        Table {
            name: "Ricci",
            chains: vec![
                chain(S(&[(8, 1, 0, 2, 0), (-16, 1, 0, 0, 2)]), "rho11, rho22"),
                chain(S(&[(-8, 1, 0, 0, 2)]), "trho11, trho22, -etrho12"),
                chain(S(&[(8, 1, 0, 0, 2), (-16, 1, 0, 2, 0)]), "rho33, rho44"),
                chain(S(&[(-8, 1, 0, 2, 0)]), "trho33, trho44, -etrho34"),
                chain(
                    S(&[(-8, 1, 0, 1, 1)]),
                    "rho13, rho24, -erho14, -erho23, trho13, trho24, -etrho14, -etrho23",
                ),
                chain(S(&[]), "rho12, rho34"),
                chain(S(&[(48, 1, 0, 2, 0), (-48, 1, 0, 0, 2)]), "tau"),
                chain(S(&[(16, 1, 1, 0, 2), (-16, 1, 1, 2, 0)]), "ttau"),
            ],
            rest_zero: vec![],
            relations: vec![],
        },
        Table {
            name: "Q",
            chains: vec![
                chain(FSharp(&[(1, 2, 1, 1, 0)]), "Q131, -Q142, Q232, -Q241, 1/2Q344"),
                chain(FSharp(&[(1, 2, 0, 1, 0)]), "Q132, -Q141, Q231, -Q242, 1/2Q343"),
                chain(FSharp(&[(1, 2, 1, 0, 1)]), "Q133, Q144, -Q234, -Q243, -1/2Q122"),
                chain(FSharp(&[(1, 2, 0, 0, 1)]), "Q134, Q143, -Q233, -Q244, -1/2Q121"),
            ],
            rest_zero: vec![("Q", ANTI_12)],
            relations: vec![],
        },
        Table {
            name: "A",
            chains: vec![
                chain(
                    S(&[(2, 1, 0, 2, 0)]),
                    "A1324, A1423, A2314, A2413, -1/2A3434, 1/2A3443, \
                     eA1323, eA1424, eA2313, eA2414, -1/2eA3433, 1/2eA3444",
                ),
                chain(
                    S(&[(2, 1, 0, 0, 2)]),
                    "A1342, A1432, A2341, A2431, 1/2A1212, -1/2A1221, \
                     eA1341, eA1431, eA2342, eA2431, 1/2eA1211, -1/2eA1222",
                ),
                chain(
                    S(&[(2, 1, 0, 1, 1)]),
                    "1/2A1232, -1/2A1241, -1/2A3414, 1/2A3423, -A1311, A1322, \
                     -A1333, A1344, A1412, -A1421, -A1434, A1443, \
                     -A2312, A2321, A2334, -A2343, A2411, -A2422, \
                     A2433, -A2444, 1/2eA1231, -1/2eA1242, -1/2eA3413, \
                     1/2eA3424, -eA1312, eA1321, -eA1334, eA1343, eA1411, \
                     -eA1422, -eA1433, eA1444, -eA2311, eA2322, eA2333, \
                     -eA2344, eA2412, -eA2421, eA2434, -eA2443",
                ),
                chain(
                    S(&[(2, 1, 0, 2, 0), (-4, 1, 0, 0, 2)]),
                    "A1313, A1414, A2323, A2424, eA1314, eA1413, eA2324, eA2423",
                ),
                chain(
                    S(&[(2, 1, 0, 0, 2), (-4, 1, 0, 2, 0)]),
                    "A1331, A1441, A2332, A2442, eA1332, eA1442, eA2331, eA2441",
                ),
            ],
            rest_zero: vec![("A", ANTI_12_4)],
            relations: vec![],
        },
        Table {
            name: "D",
            chains: vec![
                chain(
                    V([&[(-1, 1, 1, 0, 1)], &[(-1, 1, 0, 0, 1)], &[], &[]]),
                    "D11, -eD12, eD21, -D22",
                ),
                chain(
                    V([&[(-1, 1, 1, 1, 0)], &[(-1, 1, 0, 1, 0)], &[], &[]]),
                    "D13, -eD14, eD23, -D24",
                ),
                chain(
                    V([&[], &[], &[(-1, 1, 1, 0, 1)], &[(-1, 1, 0, 0, 1)]]),
                    "D31, -eD32, eD41, -D42",
                ),
                chain(
                    V([&[], &[], &[(-1, 1, 1, 1, 0)], &[(-1, 1, 0, 1, 0)]]),
                    "D33, -eD34, eD43, -D44",
                ),
            ],
            rest_zero: vec![("D", NONE)],
            relations: vec![],
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_parsing() {
        let e = Entry::parse("-1/2eF433");
        assert_eq!(e.coef, Scalar::ratio(-1, 2));
        assert!(e.eps);
        assert_eq!(e.name, "F");
        assert_eq!(e.idx, vec![3, 2, 2]);
        let f = Entry::parse("1/4fsharp");
        assert_eq!(f.coef, Scalar::ratio(1, 4));
        assert!(!f.eps && f.idx.is_empty());
        assert_eq!(f.name, "fsharp");
        let t = Entry::parse("etthetastar1");
        assert_eq!((t.eps, t.name.as_str(), t.idx.clone()), (true, "tthetastar", vec![0]));
    }

    #[test]
    fn poly_evaluation() {
        let v = Vals {
            l1: Scalar::from_int(1),
            l2: Scalar::from_int(2),
            e: Scalar::from_int(-1),
        };
        assert_eq!(eval_poly(&[(8, 1, 0, 2, 0), (-16, 1, 0, 0, 2)], &v), Scalar::from_int(-56));
        assert_eq!(eval_poly(&[(4, 1, 1, 1, 1)], &v), Scalar::from_int(-8));
        let fs = Value::FSharp(&[(1, 2, 0, 1, 0)]).eval(&v);
        assert_eq!(fs[0], Scalar::from_int(8));
    }

    #[test]
    fn curvature_orbit_closure() {
        let tables = paper_tables();
        let r = tables.iter().find(|t| t.name == "R").unwrap();
        let covered = r.covered("R", CURVATURE);
        // 1221 generates 1212, 2121, 2112.
        assert!(covered.contains(&vec![0, 1, 0, 1]));
        assert!(covered.contains(&vec![1, 0, 1, 0]));
        assert!(!covered.contains(&vec![0, 0, 1, 1]));
    }

    #[test]
    fn every_table_entry_is_well_formed() {
        for table in paper_tables() {
            for chain in &table.chains {
                for e in &chain.entries {
                    assert!(!e.name.is_empty(), "{}", e.label);
                    assert!(e.idx.iter().all(|&i| i < 4), "{}", e.label);
                }
            }
        }
    }

    #[test]
    fn perturb_flips_one_entry() {
        let mut tables = paper_tables();
        let r = tables.iter_mut().find(|t| t.name == "R").unwrap();
        assert!(r.perturb("R1221"));
        assert_eq!(r.chains[0].entries[0].coef, Scalar::from_int(-1));
        assert!(!r.perturb("R9999"));
    }
}
