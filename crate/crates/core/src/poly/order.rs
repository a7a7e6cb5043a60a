use std::cmp::Ordering;

use super::Monomial;

/// A global monomial order on a fixed ring.
///
/// `Elimination(mask)` ranks monomials first by their degree in the masked
/// variables and breaks ties with degrevlex, so any polynomial whose leading
/// monomial avoids the masked variables avoids them entirely.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[derive(Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegRevLex,
    Elimination(Vec<bool>),
}


impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::DegRevLex => degrevlex(a, b),
            MonomialOrder::Elimination(mask) => {
                let wa: u32 = masked_degree(a, mask);
                let wb: u32 = masked_degree(b, mask);
                wa.cmp(&wb).then_with(|| degrevlex(a, b))
            }
        }
    }

    /// True if the order is compatible with total degree.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::DegRevLex)
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::Elimination(_) => "elimination",
        }
    }
}

fn masked_degree(m: &Monomial, mask: &[bool]) -> u32 {
    m.exps()
        .iter()
        .zip(mask)
        .filter(|(_, &on)| on)
        .map(|(&e, _)| e as u32)
        .sum()
}

fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exps().iter().zip(b.exps()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn degrevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        other => return other,
    }
    for (x, y) in a.exps().iter().zip(b.exps()).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            // smaller exponent in the last differing variable wins
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn degrevlex_basics() {
        let o = MonomialOrder::DegRevLex;
        // x^2 > x*y > y^2 > x*z > y*z > z^2
        let seq = [
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[0, 2, 0]),
            m(&[1, 0, 1]),
            m(&[0, 1, 1]),
            m(&[0, 0, 2]),
        ];
        for w in seq.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Greater);
        }
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[1, 0, 0])), Ordering::Less);
    }

    #[test]
    fn lex_and_elimination() {
        assert_eq!(
            MonomialOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 5])),
            Ordering::Greater
        );
        let o = MonomialOrder::Elimination(vec![false, true]);
        assert_eq!(o.cmp(&m(&[5, 0]), &m(&[0, 1])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[2, 1]), &m(&[0, 1])), Ordering::Greater);
    }
}
