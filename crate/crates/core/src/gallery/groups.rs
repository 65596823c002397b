use crate::error::{Error, Result};
use crate::tensor::{Grade, GradingGroup};

/// A finite group given by its multiplication table on named elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    /// For abelian groups built from cyclic factors: the grading by exponents.
    grading: Option<(GradingGroup, Vec<Grade>)>,
}

impl FiniteGroup {
    /// Validates a multiplication table: closure, identity, inverses and associativity.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = names.len();
        if n == 0 {
            return Err(Error::UnsupportedGroup("empty group".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::UnsupportedGroup("table is not n×n over the elements".into()));
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::UnsupportedGroup("element names repeat".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::UnsupportedGroup("no identity element".into()))?;
        let inverses = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| table[x][y] == identity && table[y][x] == identity)
                    .ok_or_else(|| Error::UnsupportedGroup(format!("{} has no inverse", names[x])))
            })
            .collect::<Result<Vec<_>>>()?;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return Err(Error::UnsupportedGroup(format!(
                            "not associative at ({}, {}, {})",
                            names[x], names[y], names[z]
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            names,
            table,
            identity,
            inverses,
            grading: None,
        })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverses[x]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|x| (0..self.order()).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// The exponent grading of an abelian group built from cyclic factors.
    pub fn grading(&self) -> Option<&(GradingGroup, Vec<Grade>)> {
        self.grading.as_ref()
    }

    /// All automorphisms, as permutations of element indices.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        permutations(&mut perm, 0, &mut |p| {
            if p[self.identity] == self.identity
                && (0..n).all(|x| (0..n).all(|y| p[self.mul(x, y)] == self.mul(p[x], p[y])))
            {
                out.push(p.to_vec());
            }
        });
        out.sort();
        out
    }
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

fn power_name(g: &str, e: usize) -> String {
    match e {
        0 => "1".into(),
        1 => g.into(),
        _ => format!("{g}^{e}"),
    }
}

/// C_n = {1, g, g^2, …}.
pub fn cyclic_group(n: usize) -> FiniteGroup {
    cyclic_group_named(n, "g")
}

pub fn cyclic_group_named(n: usize, generator: &str) -> FiniteGroup {
    assert!(n > 0, "cyclic group of order 0");
    let names = (0..n).map(|e| power_name(generator, e)).collect();
    let table = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
    let mut g = FiniteGroup::from_table(names, table).expect("cyclic groups are groups");
    g.grading = Some((GradingGroup::new(vec![n as u64]), (0..n).map(|e| vec![e as i64]).collect()));
    g
}

/// G × H with elements named by juxtaposition, e.g. "g·h^2".
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (m, n) = (g.order(), h.order());
    let names = (0..m * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            match (x == g.identity, y == h.identity) {
                (true, true) => "1".to_string(),
                (true, false) => h.names[y].clone(),
                (false, true) => g.names[x].clone(),
                (false, false) => format!("{}·{}", g.names[x], h.names[y]),
            }
        })
        .collect();
    let table = (0..m * n)
        .map(|i| (0..m * n).map(|j| g.mul(i / n, j / n) * n + h.mul(i % n, j % n)).collect())
        .collect();
    let mut p = FiniteGroup::from_table(names, table).expect("products of groups are groups");
    if let (Some((ga, da)), Some((gb, db))) = (&g.grading, &h.grading) {
        let grades = (0..m * n)
            .map(|i| {
                let mut v = da[i / n].clone();
                v.extend_from_slice(&db[i % n]);
                v
            })
            .collect();
        p.grading = Some((ga.direct_sum(gb), grades));
    }
    p
}

/// D_n of order 2n: elements r^i s^e with s r s = r⁻¹.
pub fn dihedral_group(n: usize) -> FiniteGroup {
    assert!(n >= 2, "dihedral group needs n ≥ 2");
    let name = |i: usize, e: usize| match (i, e) {
        (0, 0) => "1".to_string(),
        (0, 1) => "s".to_string(),
        (_, 0) => power_name("r", i),
        _ => format!("{}s", power_name("r", i)),
    };
    let names = (0..2 * n).map(|k| name(k % n, k / n)).collect();
    let table = (0..2 * n)
        .map(|x| {
            (0..2 * n)
                .map(|y| {
                    let (i, e) = (x % n, x / n);
                    let (j, f) = (y % n, y / n);
                    let rot = if e == 0 { (i + j) % n } else { (i + n - j) % n };
                    ((e + f) % 2) * n + rot
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(names, table).expect("dihedral groups are groups")
}

/// S₃ as the dihedral group of order 6.
pub fn symmetric_group_3() -> FiniteGroup {
    dihedral_group(3)
}
