use std::cmp::Ordering;
use std::fmt;

/// Exponent vector `x_1^{e_1} ... x_n^{e_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Render with the given variable names, e.g. `x^2*y`.
    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// All monomials of total degree exactly `d` in `nvars` variables,
    /// lexicographically descending.
    pub fn of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.0.len()).map(|i| format!("x{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    GRevLex,
    GrLex,
}

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderKind::GRevLex => "grevlex",
            OrderKind::GrLex => "grlex",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "grevlex" => Some(OrderKind::GRevLex),
            "grlex" => Some(OrderKind::GrLex),
            _ => None,
        }
    }
}

/// Sort key whose lexicographic order realizes a monomial order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderKey(Vec<i64>);

/// A graded monomial order with a variable precedence.
///
/// The global form compares total degree first (largest wins) and is a
/// well-order. The local form compares total degree the other way round,
/// so the leading term of a polynomial is its lowest-degree part; it is
/// only used on polynomials truncated at a fixed degree. An optional
/// elimination block puts the total degree in a set of variables in front
/// of everything else.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
    local: bool,
    elim: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder {
            kind,
            precedence: (0..nvars).collect(),
            local: false,
            elim: Vec::new(),
        }
    }

    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder::new(OrderKind::GRevLex, nvars)
    }

    pub fn grlex(nvars: usize) -> Self {
        MonomialOrder::new(OrderKind::GrLex, nvars)
    }

    /// `precedence[0]` is the largest variable.
    pub fn with_precedence(mut self, precedence: Vec<usize>) -> Self {
        let mut sorted = precedence.clone();
        sorted.sort_unstable();
        assert!(
            sorted.iter().copied().eq(0..self.precedence.len()),
            "precedence must be a permutation"
        );
        self.precedence = precedence;
        self
    }

    /// Same tie-break, degree compared ascending.
    pub fn local(&self) -> Self {
        MonomialOrder {
            local: true,
            elim: Vec::new(),
            ..self.clone()
        }
    }

    pub fn global(&self) -> Self {
        MonomialOrder {
            local: false,
            ..self.clone()
        }
    }

    /// Block order eliminating the variables in `block`.
    pub fn eliminating(&self, block: Vec<usize>) -> Self {
        MonomialOrder {
            local: false,
            elim: block,
            ..self.clone()
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    pub fn is_local(&self) -> bool {
        self.local
    }

    pub fn key(&self, m: &Monomial) -> OrderKey {
        let e = m.exps();
        let n = e.len();
        let mut k = Vec::with_capacity(n + 2);
        if !self.elim.is_empty() {
            k.push(self.elim.iter().map(|&i| e[i] as i64).sum());
        }
        let deg = m.degree() as i64;
        k.push(if self.local { -deg } else { deg });
        match self.kind {
            OrderKind::GRevLex => k.extend(self.precedence.iter().rev().map(|&i| -(e[i] as i64))),
            OrderKind::GrLex => k.extend(self.precedence.iter().map(|&i| e[i] as i64)),
        }
        OrderKey(k)
    }

    pub fn monomial(&self, key: &OrderKey) -> Monomial {
        let n = self.precedence.len();
        let off = if self.elim.is_empty() { 1 } else { 2 };
        let mut e = vec![0u32; n];
        match self.kind {
            OrderKind::GRevLex => {
                for (pos, &i) in self.precedence.iter().rev().enumerate() {
                    e[i] = (-key.0[off + pos]) as u32;
                }
            }
            OrderKind::GrLex => {
                for (pos, &i) in self.precedence.iter().enumerate() {
                    e[i] = key.0[off + pos] as u32;
                }
            }
        }
        Monomial::new(e)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    /// All variable precedences for `nvars` variables.
    pub fn all_precedences(nvars: usize) -> Vec<Vec<usize>> {
        fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == used.len() {
                out.push(cur.clone());
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; nvars], &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_degree_three() {
        let o = MonomialOrder::grevlex(2);
        assert_eq!(o.cmp(&m(&[3, 0]), &m(&[1, 2])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 3]), &m(&[2, 1])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
    }

    #[test]
    fn grevlex_differs_from_grlex_in_three_vars() {
        // x*z^2 vs y^3: grlex says x z^2 > y^3, grevlex says y^3 > x z^2
        let a = m(&[1, 0, 2]);
        let b = m(&[0, 3, 0]);
        assert_eq!(MonomialOrder::grlex(3).cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::grevlex(3).cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn local_order_prefers_low_degree() {
        let o = MonomialOrder::grevlex(2).local();
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[3, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0]), &m(&[0, 1])), Ordering::Greater);
    }

    #[test]
    fn key_round_trip_all_orders() {
        let mons: Vec<Monomial> = (0..4).flat_map(|d| Monomial::of_degree(3, d)).collect();
        for prec in MonomialOrder::all_precedences(3) {
            for base in [MonomialOrder::grevlex(3), MonomialOrder::grlex(3)] {
                let o = base.with_precedence(prec.clone());
                for ord in [o.clone(), o.local(), o.eliminating(vec![0])] {
                    for mono in &mons {
                        assert_eq!(&ord.monomial(&ord.key(mono)), mono);
                    }
                }
            }
        }
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(Monomial::of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::of_degree(2, 4).len(), 5);
    }
}
