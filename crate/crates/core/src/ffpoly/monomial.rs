use core::cmp::Ordering;
use core::fmt;

/// The variables understood by the polynomial layer. `T` is the univariate
/// helper variable; geometric code only uses `X`, `Y`, `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
    T,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::Z, Var::T];
    pub const PROJECTIVE: [Var; 3] = [Var::X, Var::Y, Var::Z];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
            Var::T => 't',
        }
    }

    pub fn from_char(c: char) -> Option<Var> {
        match c {
            'x' => Some(Var::X),
            'y' => Some(Var::Y),
            'z' => Some(Var::Z),
            't' => Some(Var::T),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A Laurent monomial `x^a y^b z^c t^e`; exponents may be negative.
///
/// Ordering is graded reverse lexicographic with `x > y > z > t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [i32; 4],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; 4] };

    pub fn new(exps: [i32; 4]) -> Self {
        Monomial { exps }
    }

    pub fn xyz(a: i32, b: i32, c: i32) -> Self {
        Monomial { exps: [a, b, c, 0] }
    }

    pub fn var(v: Var, e: i32) -> Self {
        let mut exps = [0; 4];
        exps[v.index()] = e;
        Monomial { exps }
    }

    #[inline]
    pub fn exponents(&self) -> [i32; 4] {
        self.exps
    }

    #[inline]
    pub fn exponent(&self, v: Var) -> i32 {
        self.exps[v.index()]
    }

    pub fn with_exponent(mut self, v: Var, e: i32) -> Self {
        self.exps[v.index()] = e;
        self
    }

    pub fn degree(&self) -> i32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps == [0; 4]
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.exps.iter().any(|&e| e < 0)
    }

    /// True when every x, y, z exponent is at most -1 (and no `t` occurs).
    pub fn is_strictly_negative(&self) -> bool {
        self.exps[..3].iter().all(|&e| e <= -1) && self.exps[3] == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps) {
            *e += o;
        }
        Monomial { exps }
    }

    /// Exponent-wise quotient; may produce negative exponents.
    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps) {
            *e -= o;
        }
        Monomial { exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps).all(|(&a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps) {
            *e = (*e).max(o);
        }
        Monomial { exps }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps)
            .all(|(&a, b)| a <= 0 || b <= 0)
    }

    /// Raises the monomial to the `k`-th power exponent-wise.
    pub fn pow(&self, k: i32) -> Monomial {
        Monomial {
            exps: self.exps.map(|e| e * k),
        }
    }

    /// `Some(v)` when the monomial is a positive pure power of `v`.
    pub fn pure_power_of(&self) -> Option<Var> {
        let mut found = None;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e < 0 {
                return None;
            }
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(v);
            }
        }
        found
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Rightmost differing exponent: the smaller one is the larger monomial.
        for i in (0..4).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        let x = Monomial::var(Var::X, 1);
        let y = Monomial::var(Var::Y, 1);
        let z = Monomial::var(Var::Z, 1);
        assert!(x > y && y > z);
        // x*z^2 < y^3 in grevlex (smaller z-power wins).
        assert!(Monomial::xyz(1, 0, 2) < Monomial::xyz(0, 3, 0));
        assert!(Monomial::xyz(2, 0, 0) > Monomial::xyz(0, 0, 1));
        assert!(Monomial::xyz(1, 1, 0) > Monomial::xyz(1, 0, 1));
    }

    #[test]
    fn pure_powers() {
        assert_eq!(Monomial::xyz(0, 5, 0).pure_power_of(), Some(Var::Y));
        assert_eq!(Monomial::xyz(1, 5, 0).pure_power_of(), None);
        assert_eq!(Monomial::ONE.pure_power_of(), None);
    }

    #[test]
    fn display() {
        use alloc::string::ToString;
        assert_eq!(Monomial::xyz(-3, -2, -2).to_string(), "x^-3*y^-2*z^-2");
        assert_eq!(Monomial::xyz(1, 5, 0).to_string(), "x*y^5");
        assert_eq!(Monomial::ONE.to_string(), "1");
    }
}
