//! Finite groups given by closed-form presentations (cyclic `Zₙ`, dihedral
//! `Dₙ`) or by an explicit Cayley table.
//!
//! Element indices are canonical: for `Zₙ` index `k` is `rᵏ`; for `Dₙ`
//! indices `0..n` are the rotations `rʲ` and `n..2n` the reflections `rʲs`.
//! Index 0 is always the identity.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub usize);

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement(0);

    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", content = "n", rename_all = "lowercase")]
pub enum GroupFamily {
    Cyclic(usize),
    Dihedral(usize),
    /// Built from an explicit Cayley table; no closed-form characters.
    Table,
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFamily::Cyclic(n) => write!(f, "Z{n}"),
            GroupFamily::Dihedral(n) => write!(f, "D{n}"),
            GroupFamily::Table => f.write_str("table group"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    family: GroupFamily,
    order: usize,
    cayley: Vec<usize>,
    inverses: Vec<usize>,
    names: Vec<String>,
}

fn rotation_name(a: usize) -> String {
    match a {
        0 => "e".to_string(),
        1 => "r".to_string(),
        _ => format!("r^{a}"),
    }
}

fn reflection_name(a: usize) -> String {
    match a {
        0 => "s".to_string(),
        1 => "r*s".to_string(),
        _ => format!("r^{a}*s"),
    }
}

impl FiniteGroup {
    /// The cyclic group `Zₙ` with multiplication `rⁱ·rʲ = rⁱ⁺ʲ`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group needs n >= 1".into()));
        }
        let cayley = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i + j) % n))
            .collect();
        Self::assemble(
            GroupFamily::Cyclic(n),
            n,
            cayley,
            (0..n).map(rotation_name).collect(),
        )
    }

    /// The dihedral group `Dₙ` of order `2n`, from `rⁿ = s² = e`, `srs = r⁻¹`:
    /// `(rᵃ sᵇ)(rᶜ sᵈ) = r^{a + (−1)ᵇ c} s^{b+d}`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGroup("dihedral group needs n >= 2".into()));
        }
        let order = 2 * n;
        let split = |g: usize| (g % n, g / n);
        let mut cayley = Vec::with_capacity(order * order);
        for g in 0..order {
            let (a, b) = split(g);
            for h in 0..order {
                let (c, d) = split(h);
                let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                cayley.push(rot + n * ((b + d) % 2));
            }
        }
        let names = (0..n)
            .map(rotation_name)
            .chain((0..n).map(reflection_name))
            .collect();
        Self::assemble(GroupFamily::Dihedral(n), order, cayley, names)
    }

    /// A group from a row-major Cayley table whose element 0 is the identity.
    pub fn from_cayley_table(table: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self> {
        let order = table.len();
        if order == 0 || names.len() != order || table.iter().any(|r| r.len() != order) {
            return Err(Error::InvalidGroup(
                "Cayley table must be square with one name per element".into(),
            ));
        }
        Self::assemble(
            GroupFamily::Table,
            order,
            table.into_iter().flatten().collect(),
            names,
        )
    }

    fn assemble(
        family: GroupFamily,
        order: usize,
        cayley: Vec<usize>,
        names: Vec<String>,
    ) -> Result<Self> {
        if cayley.iter().any(|&x| x >= order) {
            return Err(Error::InvalidGroup("Cayley entry out of range".into()));
        }
        let row = |g: usize| &cayley[g * order..(g + 1) * order];
        for g in 0..order {
            let mut seen_row = vec![false; order];
            let mut seen_col = vec![false; order];
            for h in 0..order {
                seen_row[cayley[g * order + h]] = true;
                seen_col[cayley[h * order + g]] = true;
            }
            if seen_row.contains(&false) || seen_col.contains(&false) {
                return Err(Error::InvalidGroup("Cayley table is not a Latin square".into()));
            }
            if cayley[g] != g || cayley[g * order] != g {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        if order <= 12 {
            for g in 0..order {
                for h in 0..order {
                    let gh = row(g)[h];
                    for k in 0..order {
                        if row(gh)[k] != row(g)[row(h)[k]] {
                            return Err(Error::InvalidGroup(format!(
                                "multiplication is not associative at ({g}, {h}, {k})"
                            )));
                        }
                    }
                }
            }
        }
        let inverses = (0..order)
            .map(|g| row(g).iter().position(|&x| x == 0).expect("Latin square"))
            .collect();
        Ok(Self {
            family,
            order,
            cayley,
            inverses,
            names,
        })
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(GroupElement)
    }

    pub fn mul(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        GroupElement(self.cayley[g.0 * self.order + h.0])
    }

    pub fn inverse(&self, g: GroupElement) -> GroupElement {
        GroupElement(self.inverses[g.0])
    }

    pub fn pow(&self, g: GroupElement, k: usize) -> GroupElement {
        (0..k).fold(self.identity(), |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: GroupElement) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn name(&self, g: GroupElement) -> &str {
        &self.names[g.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The canonical word `rᵃ sᵇ` of an element of a presented group.
    pub fn word(&self, g: GroupElement) -> Option<(usize, usize)> {
        match self.family {
            GroupFamily::Cyclic(_) => Some((g.0, 0)),
            GroupFamily::Dihedral(n) => Some((g.0 % n, g.0 / n)),
            GroupFamily::Table => None,
        }
    }

    pub fn generator_r(&self) -> Option<GroupElement> {
        match self.family {
            GroupFamily::Cyclic(n) => Some(GroupElement(1 % n)),
            GroupFamily::Dihedral(_) => Some(GroupElement(1)),
            GroupFamily::Table => None,
        }
    }

    pub fn generator_s(&self) -> Option<GroupElement> {
        match self.family {
            GroupFamily::Dihedral(n) => Some(GroupElement(n)),
            _ => None,
        }
    }

    /// Parse names like `e`, `r`, `r^4`, `s`, `r*s`, `r^2*s`, `r^2s`.
    /// Exponents are reduced modulo `n`.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let unknown = || Error::UnknownElement(text.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if let Some(i) = self.names.iter().position(|n| {
            n.chars().filter(|c| *c != '*').collect::<String>() == compact
        }) {
            return Ok(GroupElement(i));
        }
        let (n, has_s) = match self.family {
            GroupFamily::Cyclic(n) => (n, false),
            GroupFamily::Dihedral(n) => (n, true),
            GroupFamily::Table => return Err(unknown()),
        };
        let mut rest = compact.as_str();
        let mut rot = 0usize;
        if let Some(after) = rest.strip_prefix('r') {
            rest = after;
            rot = 1;
            if let Some(after) = rest.strip_prefix('^') {
                let digits: String = after.chars().take_while(char::is_ascii_digit).collect();
                if digits.is_empty() {
                    return Err(unknown());
                }
                rot = digits.parse::<usize>().map_err(|_| unknown())? % n;
                rest = &after[digits.len()..];
            }
        } else if let Some(after) = rest.strip_prefix('e') {
            rest = after;
        }
        let refl = match rest {
            "" => 0,
            "s" if has_s => 1,
            _ => return Err(unknown()),
        };
        if compact.is_empty() {
            return Err(unknown());
        }
        Ok(GroupElement(rot % n + n * refl))
    }

    /// Reject tables that claim a family whose element count does not fit.
    pub fn check_family(&self) -> bool {
        match self.family {
            GroupFamily::Cyclic(n) => self.order == n,
            GroupFamily::Dihedral(n) => self.order == 2 * n,
            GroupFamily::Table => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClasses {
    classes: Vec<Vec<GroupElement>>,
    class_of: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn classes(&self) -> &[Vec<GroupElement>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, g: GroupElement) -> usize {
        self.class_of[g.0]
    }

    /// Smallest-index member of each class.
    pub fn representatives(&self) -> Vec<GroupElement> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// Partition `G` into classes `{h g h⁻¹}`, ordered by smallest member.
pub fn conjugacy_classes(group: &FiniteGroup) -> ConjugacyClasses {
    let mut class_of = vec![usize::MAX; group.order()];
    let mut classes = Vec::new();
    for g in group.elements() {
        if class_of[g.0] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members: Vec<GroupElement> = group
            .elements()
            .map(|h| group.mul(group.mul(h, g), group.inverse(h)))
            .collect();
        members.sort();
        members.dedup();
        for m in &members {
            class_of[m.0] = id;
        }
        classes.push(members);
    }
    ConjugacyClasses { classes, class_of }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(g: &FiniteGroup, name: &str) -> GroupElement {
        g.parse_element(name).unwrap()
    }

    #[test]
    fn trivial_cyclic_group() {
        let g = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.mul(g.identity(), g.identity()), g.identity());
        assert_eq!(g.name(g.identity()), "e");
    }

    #[test]
    fn z6_is_abelian() {
        let g = FiniteGroup::cyclic(6).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(g.mul(a, b), g.mul(b, a));
            }
        }
    }

    #[test]
    fn z4_generator_has_order_four() {
        let g = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(g.element_order(el(&g, "r")), 4);
    }

    #[test]
    fn dihedral_orders() {
        assert_eq!(FiniteGroup::dihedral(3).unwrap().order(), 6);
        assert_eq!(FiniteGroup::dihedral(6).unwrap().order(), 12);
        assert!(FiniteGroup::dihedral(1).is_err());
        assert!(FiniteGroup::cyclic(0).is_err());
    }

    #[test]
    fn d3_srs_is_r_inverse() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let (r, s) = (el(&g, "r"), el(&g, "s"));
        assert_eq!(g.mul(g.mul(s, r), s), el(&g, "r^2"));
    }

    #[test]
    fn dihedral_element_orders() {
        for n in 2..=8 {
            let g = FiniteGroup::dihedral(n).unwrap();
            assert_eq!(g.element_order(g.generator_r().unwrap()), n);
            for j in 0..n {
                assert_eq!(g.element_order(GroupElement(n + j)), 2);
            }
        }
    }

    #[test]
    fn names_are_canonical_and_parse_back() {
        let g = FiniteGroup::dihedral(6).unwrap();
        let names: Vec<&str> = g.names().iter().map(String::as_str).collect();
        assert_eq!(
            names,
            [
                "e", "r", "r^2", "r^3", "r^4", "r^5", "s", "r*s", "r^2*s", "r^3*s", "r^4*s",
                "r^5*s"
            ]
        );
        for x in g.elements() {
            assert_eq!(g.parse_element(g.name(x)).unwrap(), x);
        }
        assert_eq!(el(&g, "r^2s"), el(&g, "r^2*s"));
        assert_eq!(el(&g, "rs"), el(&g, "r*s"));
        assert_eq!(el(&g, "r^8"), el(&g, "r^2"));
        assert_eq!(el(&g, "r^0"), g.identity());
        // word order: r^j s is r^j applied after s
        assert_eq!(el(&g, "r^2*s"), g.mul(el(&g, "r^2"), el(&g, "s")));
    }

    #[test]
    fn parse_rejects_garbage() {
        let z = FiniteGroup::cyclic(6).unwrap();
        for bad in ["", "s", "x", "r^", "r^2*t", "rr"] {
            assert!(z.parse_element(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn conjugacy_classes_of_examples() {
        let z6 = conjugacy_classes(&FiniteGroup::cyclic(6).unwrap());
        assert_eq!(z6.sizes(), vec![1; 6]);

        let d3g = FiniteGroup::dihedral(3).unwrap();
        let d3 = conjugacy_classes(&d3g);
        assert_eq!(d3.sizes(), vec![1, 2, 3]);
        let refl: Vec<&str> = d3.classes()[2].iter().map(|&x| d3g.name(x)).collect();
        assert_eq!(refl, ["s", "r*s", "r^2*s"]);

        let d6g = FiniteGroup::dihedral(6).unwrap();
        let d6 = conjugacy_classes(&d6g);
        assert_eq!(d6.sizes(), vec![1, 2, 2, 1, 3, 3]);
        let rs: Vec<&str> = d6.classes()[5].iter().map(|&x| d6g.name(x)).collect();
        assert_eq!(rs, ["r*s", "r^3*s", "r^5*s"]);
        let reps: Vec<&str> = d6.representatives().iter().map(|&x| d6g.name(x)).collect();
        assert_eq!(reps, ["e", "r", "r^2", "r^3", "s", "r*s"]);
    }

    #[test]
    fn cayley_table_groups_are_validated() {
        let klein = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ];
        let names = ["e", "a", "b", "c"].map(String::from).to_vec();
        let g = FiniteGroup::from_cayley_table(klein, names.clone()).unwrap();
        assert_eq!(g.family(), GroupFamily::Table);
        assert_eq!(g.parse_element("b").unwrap(), GroupElement(2));

        let not_latin = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::from_cayley_table(not_latin, names[..2].to_vec()).is_err());
    }

    #[test]
    fn family_serializes_with_tag() {
        let json = serde_json::to_string(&GroupFamily::Dihedral(6)).unwrap();
        assert_eq!(json, r#"{"family":"dihedral","n":6}"#);
    }
}
