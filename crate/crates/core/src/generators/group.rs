use super::GenError;
use rand::Rng;
use std::fmt;

/// Description of a finite group whose elements are labelled `0..order`,
/// with label 0 the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    ElementaryAbelian2(u32),
    /// The dihedral group of order `2n`.
    Dihedral(usize),
    DirectProduct(Vec<GroupSpec>),
    /// Symmetric group on at most 8 points.
    Symmetric(usize),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "z{n}"),
            GroupSpec::ElementaryAbelian2(k) => write!(f, "z2^{k}"),
            GroupSpec::Dihedral(n) => write!(f, "d{n}"),
            GroupSpec::Symmetric(m) => write!(f, "s{m}"),
            GroupSpec::DirectProduct(parts) => {
                let names: Vec<String> = parts.iter().map(ToString::to_string).collect();
                write!(f, "{}", names.join("x"))
            }
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = GenError;

    /// Parses `z12`, `z2^8`, `d5`, `s4`, or products such as `z2^3xz5`.
    fn from_str(s: &str) -> Result<Self, GenError> {
        let s = s.trim().to_ascii_lowercase();
        let parts: Vec<&str> = s.split('x').collect();
        if parts.len() > 1 {
            return Ok(GroupSpec::DirectProduct(parts.iter().map(|p| p.parse()).collect::<Result<_, _>>()?));
        }
        let bad = || GenError::BadParameters(format!("unrecognised group `{s}`"));
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix("z2^") {
            return Ok(GroupSpec::ElementaryAbelian2(num(rest)? as u32));
        }
        match s.chars().next() {
            Some('z') => Ok(GroupSpec::Cyclic(num(&s[1..])?)),
            Some('d') => Ok(GroupSpec::Dihedral(num(&s[1..])?)),
            Some('s') => Ok(GroupSpec::Symmetric(num(&s[1..])?)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone)]
enum Kind {
    Cyclic(usize),
    Xor,
    Dihedral(usize),
    Product(Vec<Group>),
    Symmetric { m: usize, perms: Vec<Vec<u8>> },
}

/// A concrete group with on-the-fly multiplication.
#[derive(Debug, Clone)]
pub struct Group {
    spec: GroupSpec,
    order: usize,
    kind: Kind,
}

impl Group {
    pub fn new(spec: &GroupSpec) -> Result<Group, GenError> {
        let bad = |m: &str| Err(GenError::BadParameters(m.to_string()));
        let (order, kind) = match spec {
            GroupSpec::Cyclic(n) if *n >= 1 => (*n, Kind::Cyclic(*n)),
            GroupSpec::ElementaryAbelian2(k) if *k <= 30 => (1usize << k, Kind::Xor),
            GroupSpec::Dihedral(n) if *n >= 1 => (2 * n, Kind::Dihedral(*n)),
            GroupSpec::Symmetric(m) if (1..=8).contains(m) => {
                let perms = all_permutations(*m);
                (perms.len(), Kind::Symmetric { m: *m, perms })
            }
            GroupSpec::DirectProduct(parts) if !parts.is_empty() => {
                let groups = parts.iter().map(Group::new).collect::<Result<Vec<_>, _>>()?;
                let order = groups.iter().map(|g| g.order).product();
                (order, Kind::Product(groups))
            }
            GroupSpec::Symmetric(_) => return bad("symmetric groups limited to m ≤ 8"),
            GroupSpec::ElementaryAbelian2(_) => return bad("elementary abelian rank limited to 30"),
            _ => return bad("group must be non-empty"),
        };
        Ok(Group { spec: spec.clone(), order, kind })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.kind {
            Kind::Cyclic(n) => (a + b) % n,
            Kind::Xor => a ^ b,
            Kind::Dihedral(n) => {
                // label i + n·j encodes r^i s^j; s r^k = r^{-k} s
                let (i, j, k, l) = (a % n, a / n, b % n, b / n);
                let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
                rot + n * ((j + l) % 2)
            }
            Kind::Symmetric { perms, .. } => {
                let (p, q) = (&perms[a], &perms[b]);
                let composed: Vec<u8> = q.iter().map(|&x| p[x as usize]).collect();
                rank(&composed)
            }
            Kind::Product(groups) => {
                let (mut out, mut radix, mut a, mut b) = (0, 1, a, b);
                for g in groups.iter().rev() {
                    out += radix * g.mul(a % g.order, b % g.order);
                    radix *= g.order;
                    a /= g.order;
                    b /= g.order;
                }
                out
            }
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        match &self.kind {
            Kind::Cyclic(n) => (n - a) % n,
            Kind::Xor => a,
            Kind::Dihedral(n) => {
                if a < *n {
                    (n - a) % n
                } else {
                    a
                }
            }
            Kind::Symmetric { perms, m } => {
                let p = &perms[a];
                let mut q = vec![0u8; *m];
                for (i, &x) in p.iter().enumerate() {
                    q[x as usize] = i as u8;
                }
                rank(&q)
            }
            Kind::Product(groups) => {
                let (mut out, mut radix, mut a) = (0, 1, a);
                for g in groups.iter().rev() {
                    out += radix * g.inv(a % g.order);
                    radix *= g.order;
                    a /= g.order;
                }
                out
            }
        }
    }

    /// Exact identity and inverse laws, associativity on `samples` random
    /// triples.
    pub fn validate(&self, samples: usize, rng: &mut impl Rng) -> Result<(), GenError> {
        let e = self.identity();
        for g in 0..self.order {
            if self.mul(e, g) != g || self.mul(g, e) != g {
                return Err(GenError::BadParameters(format!("identity law fails at {g}")));
            }
            if self.mul(g, self.inv(g)) != e || self.mul(self.inv(g), g) != e {
                return Err(GenError::BadParameters(format!("inverse law fails at {g}")));
            }
        }
        for _ in 0..samples {
            let (a, b, c) = (rng.gen_range(0..self.order), rng.gen_range(0..self.order), rng.gen_range(0..self.order));
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(GenError::BadParameters(format!("associativity fails at ({a},{b},{c})")));
            }
        }
        Ok(())
    }
}

fn all_permutations(m: usize) -> Vec<Vec<u8>> {
    let total: usize = (1..=m).product();
    (0..total).map(|r| unrank(r, m)).collect()
}

fn unrank(mut r: usize, m: usize) -> Vec<u8> {
    let mut pool: Vec<u8> = (0..m as u8).collect();
    let mut out = Vec::with_capacity(m);
    for i in (0..m).rev() {
        let f: usize = (1..=i).product();
        out.push(pool.remove(r / f));
        r %= f;
    }
    out
}

fn rank(p: &[u8]) -> usize {
    let m = p.len();
    let mut r = 0;
    for i in 0..m {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        let f: usize = (1..m - i).product();
        r += smaller * f;
    }
    r
}
