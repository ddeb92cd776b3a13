use std::collections::{HashMap, HashSet, VecDeque};

use num_integer::Integer;
use num_rational::Ratio;

use super::element::{Branch, Element};
use super::perm;
use super::spec::GroupSpec;
use super::table;
use crate::card::Card;
use crate::error::{Error, Result};

/// Largest finite group (or window) this crate will enumerate.
pub const MAX_ELEMENTS: usize = 200_000;

#[derive(Debug, Clone)]
enum Arith {
    Cyclic(u64),
    Dihedral(u64),
    Dicyclic(u64),
    Abelian(Vec<u64>),
    Perm,
    Table(Vec<Vec<usize>>),
    Z,
    Q,
    Amalgam { p: i64, q: i64 },
}

/// `<x>` as vertex ids, intersected with the window for window models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSubgroup {
    pub members: Vec<usize>,
    /// Set when the true subgroup is infinite and `members` is a truncation.
    pub truncated: bool,
}

/// An immutable group model. Vertex ids are indices into
/// [`GroupModel::elements`]; the identity always has id 0.
#[derive(Debug, Clone)]
pub struct GroupModel {
    spec: GroupSpec,
    arith: Arith,
    identity: Element,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
}

impl GroupModel {
    pub fn new(spec: &GroupSpec) -> Result<GroupModel> {
        spec.validate()?;
        let (arith, identity, mut elements) = match spec {
            GroupSpec::Cyclic { n } => {
                check_size(*n as usize)?;
                (Arith::Cyclic(*n), Element::Residue(0), (0..*n).map(Element::Residue).collect())
            }
            GroupSpec::Dihedral { n } => {
                check_size(2 * *n as usize)?;
                let els = [false, true]
                    .into_iter()
                    .flat_map(|flip| (0..*n).map(move |rot| Element::Dihedral { rot, flip }))
                    .collect();
                (Arith::Dihedral(*n), Element::Dihedral { rot: 0, flip: false }, els)
            }
            GroupSpec::Dicyclic { k } => {
                check_size(4 * *k as usize)?;
                let els = [false, true]
                    .into_iter()
                    .flat_map(|b| (0..2 * *k).map(move |exp| Element::Dicyclic { exp, b }))
                    .collect();
                (Arith::Dicyclic(*k), Element::Dicyclic { exp: 0, b: false }, els)
            }
            GroupSpec::Abelian { invariants } => {
                let order = invariants.iter().try_fold(1usize, |acc, &d| {
                    acc.checked_mul(d as usize).filter(|&o| o <= MAX_ELEMENTS)
                });
                check_size(order.unwrap_or(usize::MAX))?;
                let mut els = vec![Vec::new()];
                for &d in invariants {
                    els = els
                        .into_iter()
                        .flat_map(|t| {
                            (0..d).map(move |x| {
                                let mut t = t.clone();
                                t.push(x);
                                t
                            })
                        })
                        .collect();
                }
                (
                    Arith::Abelian(invariants.clone()),
                    Element::Tuple(vec![0; invariants.len()]),
                    els.into_iter().map(Element::Tuple).collect(),
                )
            }
            GroupSpec::Permutation { degree, generators } => {
                for g in generators {
                    perm::check_bijection(*degree, g)?;
                }
                let id = perm::identity(*degree);
                (Arith::Perm, Element::Perm(id.clone()), perm_closure(id, generators)?)
            }
            GroupSpec::Table { order, table } => {
                let e = table::validate(*order, table)?;
                (Arith::Table(table.clone()), Element::Table(e), (0..*order).map(Element::Table).collect())
            }
            GroupSpec::ZWindow { radius } => {
                let r = window_radius(*radius, 2)?;
                let mut els = vec![Element::Int(0)];
                for m in 1..=r {
                    els.push(Element::Int(m));
                    els.push(Element::Int(-m));
                }
                (Arith::Z, Element::Int(0), els)
            }
            GroupSpec::QSubgroupWindow { caps, radius } => {
                let r = window_radius(*radius, 2)?;
                let den = caps.iter().try_fold(1i64, |acc, &(p, e)| {
                    (p as i64).checked_pow(e).and_then(|pe| acc.checked_mul(pe))
                });
                let den = den.ok_or_else(|| Error::InvalidSpec("denominator overflows".into()))?;
                let mut els = vec![Element::Rational(Ratio::from_integer(0))];
                for m in 1..=r {
                    els.push(Element::Rational(Ratio::new(m, den)));
                    els.push(Element::Rational(Ratio::new(-m, den)));
                }
                (Arith::Q, Element::Rational(Ratio::from_integer(0)), els)
            }
            GroupSpec::Amalgam { p, q, radius } => {
                let r = window_radius(*radius, 4)?;
                let (p, q) = (*p as i64, *q as i64);
                let mut els = vec![Element::Amalgam { branch: Branch::A, exp: 0 }];
                for m in 1..=r {
                    els.push(Element::Amalgam { branch: Branch::A, exp: m });
                    els.push(Element::Amalgam { branch: Branch::A, exp: -m });
                }
                for m in (1..=r).filter(|m| m % q != 0) {
                    els.push(Element::Amalgam { branch: Branch::B, exp: m });
                    els.push(Element::Amalgam { branch: Branch::B, exp: -m });
                }
                (Arith::Amalgam { p, q }, Element::Amalgam { branch: Branch::A, exp: 0 }, els)
            }
        };

        // Identity first; finite models are otherwise in payload order, window
        // models keep their construction order (by |exponent|, positive first).
        if !spec.is_window() {
            elements.sort_by(|a, b| (a != &identity).cmp(&(b != &identity)).then_with(|| a.cmp(b)));
        }
        let index = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        Ok(GroupModel { spec: spec.clone(), arith, identity, elements, index })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Enumerated elements; the whole group for finite models, the window
    /// otherwise.
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, id: usize) -> &Element {
        &self.elements[id]
    }

    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn identity(&self) -> &Element {
        &self.identity
    }

    pub fn is_window(&self) -> bool {
        self.spec.is_window()
    }

    pub fn is_finite(&self) -> bool {
        !self.is_window()
    }

    /// Group product. `None` only for the amalgam model when the product
    /// leaves the modelled subset `<a> ∪ <b>`.
    pub fn mul(&self, x: &Element, y: &Element) -> Option<Element> {
        use Element as E;
        let out = match (&self.arith, x, y) {
            (Arith::Cyclic(n), E::Residue(a), E::Residue(b)) => E::Residue((a + b) % n),
            (Arith::Dihedral(n), E::Dihedral { rot: i, flip: f }, E::Dihedral { rot: j, flip: g }) => {
                // s r = r^{-1} s
                let rot = if *f { (i + n - j) % n } else { (i + j) % n };
                E::Dihedral { rot, flip: f ^ g }
            }
            (Arith::Dicyclic(k), E::Dicyclic { exp: i, b: f }, E::Dicyclic { exp: j, b: g }) => {
                // b a = a^{-1} b, b^2 = a^k, a^{2k} = e
                let m = 2 * k;
                let exp = if *f { (i + m - j) % m } else { (i + j) % m };
                if *f && *g {
                    E::Dicyclic { exp: (exp + k) % m, b: false }
                } else {
                    E::Dicyclic { exp, b: f ^ g }
                }
            }
            (Arith::Abelian(inv), E::Tuple(a), E::Tuple(b)) => {
                E::Tuple(a.iter().zip(b).zip(inv).map(|((x, y), d)| (x + y) % d).collect())
            }
            (Arith::Perm, E::Perm(a), E::Perm(b)) => E::Perm(perm::compose(a, b)),
            (Arith::Table(t), E::Table(a), E::Table(b)) => E::Table(t[*a][*b]),
            (Arith::Z, E::Int(a), E::Int(b)) => E::Int(a + b),
            (Arith::Q, E::Rational(a), E::Rational(b)) => E::Rational(a + b),
            (Arith::Amalgam { .. }, _, _) => {
                let (bx, ex) = self.amalgam_parts(x);
                let (by, ey) = self.amalgam_parts(y);
                if bx == by {
                    self.amalgam(bx, ex + ey)
                } else if let Some(i) = self.a_exponent(x).filter(|_| self.b_exponent(x).is_some()) {
                    // x is central (a power of a^p = b^q)
                    let _ = i;
                    let j = self.b_exponent(x).unwrap();
                    self.amalgam(Branch::B, j + ey)
                } else if self.b_exponent(y).is_some() && self.a_exponent(y).is_some() {
                    self.amalgam(Branch::A, ex + self.a_exponent(y).unwrap())
                } else {
                    return None;
                }
            }
            _ => return None,
        };
        Some(out)
    }

    pub fn inverse(&self, x: &Element) -> Element {
        use Element as E;
        match (&self.arith, x) {
            (Arith::Cyclic(n), E::Residue(a)) => E::Residue((n - a) % n),
            (Arith::Dihedral(n), E::Dihedral { rot, flip: false }) => {
                E::Dihedral { rot: (n - rot) % n, flip: false }
            }
            (Arith::Dihedral(_), d @ E::Dihedral { flip: true, .. }) => d.clone(),
            (Arith::Dicyclic(k), E::Dicyclic { exp, b: false }) => {
                E::Dicyclic { exp: (2 * k - exp) % (2 * k), b: false }
            }
            (Arith::Dicyclic(k), E::Dicyclic { exp, b: true }) => {
                E::Dicyclic { exp: (exp + k) % (2 * k), b: true }
            }
            (Arith::Abelian(inv), E::Tuple(a)) => {
                E::Tuple(a.iter().zip(inv).map(|(x, d)| (d - x) % d).collect())
            }
            (Arith::Perm, E::Perm(a)) => E::Perm(perm::invert(a)),
            (Arith::Table(t), E::Table(a)) => {
                let E::Table(e) = self.identity else { unreachable!() };
                E::Table(t[*a].iter().position(|&c| c == e).expect("latin row"))
            }
            (Arith::Z, E::Int(a)) => E::Int(-a),
            (Arith::Q, E::Rational(a)) => E::Rational(-a),
            (Arith::Amalgam { .. }, E::Amalgam { branch, exp }) => {
                E::Amalgam { branch: *branch, exp: -exp }
            }
            _ => panic!("element {x} does not belong to {}", self.spec),
        }
    }

    /// `x^n`.
    pub fn power(&self, x: &Element, n: i64) -> Element {
        match (&self.arith, x) {
            (Arith::Z, Element::Int(a)) => Element::Int(a * n),
            (Arith::Q, Element::Rational(a)) => Element::Rational(a * Ratio::from_integer(n)),
            (Arith::Amalgam { .. }, Element::Amalgam { branch, exp }) => self.amalgam(*branch, exp * n),
            _ => {
                let base = if n < 0 { self.inverse(x) } else { x.clone() };
                let mut k = n.unsigned_abs();
                let mut acc = self.identity.clone();
                let mut sq = base;
                while k > 0 {
                    if k & 1 == 1 {
                        acc = self.mul(&acc, &sq).expect("finite models are closed");
                    }
                    sq = self.mul(&sq, &sq).expect("finite models are closed");
                    k >>= 1;
                }
                acc
            }
        }
    }

    /// Least `n >= 1` with `x^n = e`, or `ℵ0`.
    pub fn order(&self, x: &Element) -> Card {
        use Element as E;
        let fin = |n: u64| Card::Fin(n);
        match (&self.arith, x) {
            (Arith::Cyclic(n), E::Residue(a)) => fin(n / a.gcd(n)),
            (Arith::Dihedral(n), E::Dihedral { rot, flip: false }) => fin(n / rot.gcd(n)),
            (Arith::Dihedral(_), E::Dihedral { flip: true, .. }) => fin(2),
            (Arith::Dicyclic(k), E::Dicyclic { exp, b: false }) => fin(2 * k / exp.gcd(&(2 * k))),
            (Arith::Dicyclic(_), E::Dicyclic { b: true, .. }) => fin(4),
            (Arith::Abelian(inv), E::Tuple(a)) => {
                fin(a.iter().zip(inv).fold(1, |acc, (x, d)| acc.lcm(&(d / x.gcd(d)))))
            }
            (Arith::Perm, E::Perm(p)) => {
                let mut seen = vec![false; p.len()];
                let mut l = 1u64;
                for s in 0..p.len() {
                    let mut len = 0u64;
                    let mut i = s;
                    while !seen[i] {
                        seen[i] = true;
                        i = p[i];
                        len += 1;
                    }
                    if len > 0 {
                        l = l.lcm(&len);
                    }
                }
                fin(l)
            }
            (Arith::Table(_), E::Table(_)) => {
                let mut n = 1;
                let mut y = x.clone();
                while y != self.identity {
                    y = self.mul(&y, x).expect("closed");
                    n += 1;
                }
                fin(n)
            }
            _ if self.is_window() => {
                if *x == self.identity {
                    fin(1)
                } else {
                    Card::Aleph0
                }
            }
            _ => panic!("element {x} does not belong to {}", self.spec),
        }
    }

    /// `y ∈ <x>`, decided by exact arithmetic (never by window truncation).
    pub fn is_power_member(&self, x: &Element, y: &Element) -> bool {
        match (&self.arith, x, y) {
            (Arith::Z, Element::Int(a), Element::Int(b)) => {
                if *a == 0 {
                    *b == 0
                } else {
                    b % a == 0
                }
            }
            (Arith::Q, Element::Rational(a), Element::Rational(b)) => {
                if *a == Ratio::from_integer(0) {
                    *b == *a
                } else {
                    (b / a).is_integer()
                }
            }
            (Arith::Amalgam { .. }, _, _) => {
                if *x == self.identity {
                    return *y == self.identity;
                }
                if let Some(i) = self.a_exponent(x) {
                    matches!(self.a_exponent(y), Some(m) if m % i == 0)
                } else {
                    let j = self.b_exponent(x).expect("non-central b element");
                    matches!(self.b_exponent(y), Some(l) if l % j == 0)
                }
            }
            _ => {
                let mut p = x.clone();
                loop {
                    if p == *y {
                        return true;
                    }
                    if p == self.identity {
                        return false;
                    }
                    p = self.mul(&p, x).expect("closed");
                }
            }
        }
    }

    /// `y = x^n` for some nonzero `n`. Differs from membership only for
    /// `y = e` and `x` of infinite order.
    pub fn is_nonzero_power(&self, x: &Element, y: &Element) -> bool {
        if *y == self.identity && *x != self.identity {
            return self.order(x).is_finite();
        }
        self.is_power_member(x, y)
    }

    /// `<x>` as vertex ids (window-truncated for window models).
    pub fn cyclic_subgroup(&self, id: usize) -> CyclicSubgroup {
        let x = &self.elements[id];
        if self.is_window() {
            let members = (0..self.len())
                .filter(|&j| self.is_power_member(x, &self.elements[j]))
                .collect();
            return CyclicSubgroup { members, truncated: *x != self.identity };
        }
        let mut members = vec![0];
        let mut p = x.clone();
        while p != self.identity {
            members.push(self.index[&p]);
            p = self.mul(&p, x).expect("closed");
        }
        members.sort_unstable();
        CyclicSubgroup { members, truncated: false }
    }

    /// A generator of `<x> ∩ <y>` when that intersection is infinite cyclic.
    /// Only window models answer; the generator need not lie in the window.
    pub fn intersection_generator(&self, x: &Element, y: &Element) -> Option<Element> {
        if !self.is_window() || *x == self.identity || *y == self.identity {
            return None;
        }
        match (&self.arith, x, y) {
            (Arith::Z, Element::Int(a), Element::Int(b)) => Some(Element::Int(a.lcm(b))),
            (Arith::Q, Element::Rational(a), Element::Rational(b)) => {
                // lcm of fractions in lowest terms: lcm(numerators) / gcd(denominators)
                let num = a.numer().lcm(b.numer());
                let den = a.denom().gcd(b.denom());
                Some(Element::Rational(Ratio::new(num, den)))
            }
            (Arith::Amalgam { p, q }, _, _) => {
                let (p, q) = (*p, *q);
                let g = match (self.a_exponent(x), self.a_exponent(y)) {
                    (Some(i), Some(m)) => self.amalgam(Branch::A, i.lcm(&m)),
                    _ => match (self.b_exponent(x), self.b_exponent(y)) {
                        (Some(j), Some(l)) => self.amalgam(Branch::B, j.lcm(&l)),
                        _ => {
                            let (i, l) = match self.a_exponent(x) {
                                Some(i) => (i, self.b_exponent(y).expect("b element")),
                                None => (self.a_exponent(y).expect("a element"), self.b_exponent(x).expect("b element")),
                            };
                            let from_a = i.lcm(&p);
                            let from_b = p * l.lcm(&q) / q;
                            self.amalgam(Branch::A, from_a.lcm(&from_b))
                        }
                    },
                };
                Some(g)
            }
            _ => None,
        }
    }

    fn amalgam(&self, branch: Branch, exp: i64) -> Element {
        let Arith::Amalgam { p, q } = self.arith else { unreachable!() };
        match branch {
            Branch::B if exp % q == 0 => Element::Amalgam { branch: Branch::A, exp: exp / q * p },
            _ => Element::Amalgam { branch, exp },
        }
    }

    fn amalgam_parts(&self, x: &Element) -> (Branch, i64) {
        match x {
            Element::Amalgam { branch, exp } => (*branch, *exp),
            _ => panic!("element {x} does not belong to {}", self.spec),
        }
    }

    /// Exponent of `x` as a power of `a`, when `x ∈ <a>`.
    fn a_exponent(&self, x: &Element) -> Option<i64> {
        match self.amalgam_parts(x) {
            (Branch::A, i) => Some(i),
            (Branch::B, _) => None,
        }
    }

    /// Exponent of `x` as a power of `b`, when `x ∈ <b>`.
    fn b_exponent(&self, x: &Element) -> Option<i64> {
        let Arith::Amalgam { p, q } = self.arith else { unreachable!() };
        match self.amalgam_parts(x) {
            (Branch::B, j) => Some(j),
            (Branch::A, i) if i % p == 0 => Some(i / p * q),
            (Branch::A, _) => None,
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_ELEMENTS {
        Err(Error::GroupTooLarge(n, MAX_ELEMENTS))
    } else {
        Ok(())
    }
}

fn window_radius(radius: u64, per_unit: usize) -> Result<i64> {
    check_size((radius as usize).saturating_mul(per_unit).saturating_add(1))?;
    Ok(radius as i64)
}

fn perm_closure(id: Vec<usize>, generators: &[Vec<usize>]) -> Result<Vec<Element>> {
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = perm::compose(&x, g);
            if seen.insert(y.clone()) {
                check_size(seen.len())?;
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().map(Element::Perm).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(s: &str) -> GroupModel {
        GroupModel::new(&s.parse().unwrap()).unwrap()
    }

    fn amalgam_el(branch: Branch, exp: i64) -> Element {
        Element::Amalgam { branch, exp }
    }

    #[test]
    fn cyclic_six_enumerates_residues() {
        let g = model("cyclic(6)");
        let els: Vec<_> = g.elements().iter().map(ToString::to_string).collect();
        assert_eq!(els, ["0", "1", "2", "3", "4", "5"]);
    }

    #[test]
    fn dihedral_three_has_six_elements() {
        let g = model("dihedral(3)");
        assert_eq!(g.len(), 6);
        assert_eq!(g.elements().iter().filter(|x| g.order(x) == Card::Fin(2)).count(), 3);
        assert_eq!(g.element(0), g.identity());
    }

    #[test]
    fn amalgam_two_three_radius_two() {
        // a^0, a^{±1}, a^{±2}, b^{±1}, b^{±2}; b^{±3} = a^{±2} lies outside
        // the b exponent radius.
        let g = model("amalgam(2,3,N=2)");
        let labels: Vec<_> = g.elements().iter().map(ToString::to_string).collect();
        assert_eq!(labels, ["e", "a^1", "a^-1", "a^2", "a^-2", "b^1", "b^-1", "b^2", "b^-2"]);
        // identification a^2 = b^3 canonicalizes to branch a
        assert_eq!(g.power(&amalgam_el(Branch::B, 1), 3), amalgam_el(Branch::A, 2));
        assert_eq!(g.power(&amalgam_el(Branch::B, -1), 3), amalgam_el(Branch::A, -2));
    }

    #[test]
    fn element_orders() {
        assert_eq!(model("cyclic(6)").order(&Element::Residue(2)), Card::Fin(3));
        assert_eq!(model("z_window(30)").order(&Element::Int(5)), Card::Aleph0);
        let dic = model("dicyclic(3)");
        let b = Element::Dicyclic { exp: 0, b: true };
        assert_eq!(dic.order(&b), Card::Fin(4));
        // brute-force powers agree with the closed form
        let mut p = b.clone();
        let mut n = 1;
        while p != *dic.identity() {
            p = dic.mul(&p, &b).unwrap();
            n += 1;
        }
        assert_eq!(n, 4);
    }

    #[test]
    fn cyclic_subgroups() {
        let g = model("cyclic(12)");
        let sub = g.cyclic_subgroup(g.index_of(&Element::Residue(4)).unwrap());
        let members: Vec<_> = sub.members.iter().map(|&i| g.element(i).to_string()).collect();
        assert_eq!(members, ["0", "4", "8"]);
        assert!(!sub.truncated);

        let z = model("z_window(30)");
        let sub = z.cyclic_subgroup(z.index_of(&Element::Int(7)).unwrap());
        let mut vals: Vec<i64> = sub
            .members
            .iter()
            .map(|&i| match z.element(i) {
                Element::Int(v) => *v,
                _ => unreachable!(),
            })
            .collect();
        vals.sort_unstable();
        assert_eq!(vals, [-28, -21, -14, -7, 0, 7, 14, 21, 28]);
        assert!(sub.truncated);

        let am = model("amalgam(2,3,N=6)");
        let sub = am.cyclic_subgroup(am.index_of(&amalgam_el(Branch::A, 2)).unwrap());
        let mut got: Vec<_> = sub.members.iter().map(|&i| am.element(i).clone()).collect();
        got.sort();
        let mut want: Vec<_> = [0, 2, -2, 4, -4, 6, -6].map(|e| amalgam_el(Branch::A, e)).to_vec();
        want.sort();
        assert_eq!(got, want);
        // b^{±9} = a^{±6} is in the subgroup
        assert!(am.is_power_member(&amalgam_el(Branch::A, 2), &am.power(&amalgam_el(Branch::B, 1), 9)));
    }

    #[test]
    fn power_membership() {
        let z = model("z_window(30)");
        assert!(z.is_power_member(&Element::Int(4), &Element::Int(12)));
        assert!(!z.is_power_member(&Element::Int(12), &Element::Int(4)));
        let am = model("amalgam(2,3,N=9)");
        let (a, b) = (amalgam_el(Branch::A, 1), amalgam_el(Branch::B, 1));
        assert!(!am.is_power_member(&a, &b));
        assert!(!am.is_power_member(&b, &a));
        for g in [model("cyclic(8)"), model("dihedral(4)"), z.clone(), am.clone()] {
            let e = g.identity().clone();
            assert!(g.is_power_member(&e, &e));
            assert!(g.elements()[1..].iter().all(|y| !g.is_power_member(&e, y)));
        }
    }

    #[test]
    fn amalgam_identification_consistency() {
        let am = model("amalgam(2,3,N=12)");
        for k in 1..=4i64 {
            for m in -3..=3i64 {
                let x = am.power(&amalgam_el(Branch::A, 1), 2 * k);
                let y = am.power(&amalgam_el(Branch::B, 1), 3 * k * m);
                assert!(am.is_power_member(&x, &y), "a^{} vs b^{}", 2 * k, 3 * k * m);
            }
        }
    }

    #[test]
    fn amalgam_products_within_a_branch() {
        let am = model("amalgam(2,3,N=12)");
        let b = amalgam_el(Branch::B, 1);
        let a2 = amalgam_el(Branch::A, 2);
        assert_eq!(am.mul(&b, &b), Some(amalgam_el(Branch::B, 2)));
        assert_eq!(am.mul(&a2, &b), Some(amalgam_el(Branch::B, 4)));
        assert_eq!(am.mul(&amalgam_el(Branch::A, 1), &b), None);
    }

    #[test]
    fn intersection_generators() {
        let z = model("z_window(10)");
        assert_eq!(z.intersection_generator(&Element::Int(4), &Element::Int(-6)), Some(Element::Int(12)));
        let am = model("amalgam(2,3,N=12)");
        let g = am
            .intersection_generator(&amalgam_el(Branch::A, 1), &amalgam_el(Branch::B, 1))
            .unwrap();
        assert_eq!(g, amalgam_el(Branch::A, 2));
        let g = am
            .intersection_generator(&amalgam_el(Branch::A, 3), &amalgam_el(Branch::B, 2))
            .unwrap();
        // <a^3> ∩ <b^2>: a-exponents divisible by 3 and by 2·lcm(2,3)/3 = 4
        assert_eq!(g, amalgam_el(Branch::A, 12));
    }

    #[test]
    fn table_model_reorders_identity_first() {
        // Z3 with identity labelled 2
        let t = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = GroupModel::new(&GroupSpec::Table { order: 3, table: t }).unwrap();
        assert_eq!(g.element(0), &Element::Table(2));
        assert_eq!(g.order(&Element::Table(0)), Card::Fin(3));
    }

    #[test]
    fn permutation_groups() {
        assert_eq!(model("symmetric(4)").len(), 24);
        assert_eq!(model("alternating(5)").len(), 60);
        assert_eq!(model("alternating(4)").len(), 12);
        let bad = GroupSpec::Permutation { degree: 3, generators: vec![vec![0, 0, 1]] };
        assert!(GroupModel::new(&bad).is_err());
    }
}
