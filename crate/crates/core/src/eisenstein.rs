//! Exact arithmetic in `Q(ω3)`, numbers `a + b·ω3` with rational `a`, `b`
//! and `ω3 = (−1 + i√3)/2` a primitive cube root of unity.

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

/// `a + b·ω3` with exact rational components. `ω3² = −1 − ω3`, so the pair
/// is closed under multiplication and complex conjugation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct QOmega {
    pub a: Rational64,
    pub b: Rational64,
}

impl QOmega {
    pub fn new(a: Rational64, b: Rational64) -> Self {
        QOmega { a, b }
    }

    pub fn from_int(a: i64) -> Self {
        QOmega::new(Rational64::from_integer(a), Rational64::zero())
    }

    pub fn zero() -> Self {
        QOmega::from_int(0)
    }

    pub fn one() -> Self {
        QOmega::from_int(1)
    }

    /// ω3 itself.
    pub fn omega3() -> Self {
        QOmega::new(Rational64::zero(), Rational64::one())
    }

    /// ω3² = −1 − ω3.
    pub fn omega3_sq() -> Self {
        QOmega::new(-Rational64::one(), -Rational64::one())
    }

    /// i√3 = 1 + 2ω3.
    pub fn i_sqrt3() -> Self {
        QOmega::new(Rational64::one(), Rational64::from_integer(2))
    }

    /// ω6 = (1+i√3)/2 = −ω3² = 1 + ω3.
    pub fn omega6() -> Self {
        QOmega::new(Rational64::one(), Rational64::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True iff the imaginary part vanishes.
    pub fn is_real(&self) -> bool {
        self.b.is_zero()
    }

    /// Complex conjugate: `conj(a + bω3) = (a − b) − b·ω3`.
    pub fn conj(&self) -> Self {
        QOmega::new(self.a - self.b, -self.b)
    }

    /// Twice the real part, exact: `2·Re = 2a − b`.
    pub fn double_re(&self) -> Rational64 {
        self.a + self.a - self.b
    }

    pub fn to_complex(&self) -> Complex64 {
        let a = rational_to_f64(self.a);
        let b = rational_to_f64(self.b);
        Complex64::new(a - b / 2.0, b * 3f64.sqrt() / 2.0)
    }
}

fn rational_to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl std::ops::Add for QOmega {
    type Output = QOmega;
    fn add(self, rhs: QOmega) -> QOmega {
        QOmega::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl std::ops::Sub for QOmega {
    type Output = QOmega;
    fn sub(self, rhs: QOmega) -> QOmega {
        QOmega::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl std::ops::Neg for QOmega {
    type Output = QOmega;
    fn neg(self) -> QOmega {
        QOmega::new(-self.a, -self.b)
    }
}

impl std::ops::Mul for QOmega {
    type Output = QOmega;
    fn mul(self, rhs: QOmega) -> QOmega {
        // (a1 + b1ω)(a2 + b2ω) with ω² = −1 − ω
        let bb = self.b * rhs.b;
        QOmega::new(
            self.a * rhs.a - bb,
            self.a * rhs.b + self.b * rhs.a - bb,
        )
    }
}

impl std::ops::AddAssign for QOmega {
    fn add_assign(&mut self, rhs: QOmega) {
        *self = *self + rhs;
    }
}

impl std::fmt::Display for QOmega {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}w", self.b);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}w", self.a, -self.b)
        } else {
            write!(f, "{}+{}w", self.a, self.b)
        }
    }
}
