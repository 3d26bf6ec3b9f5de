//! Double-double arithmetic (about 32 significant digits).
//!
//! Only what the closed-form polynomial sums need: the four operations on
//! real and complex values, and `cos`/`sin` of a double argument. The
//! hypergeometric and bilateral-sum representations cancel heavily on the
//! real line, so they are summed here and rounded once at the end.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    const HALF_PI: Dd = Dd {
        hi: 1.570_796_326_794_896_6,
        lo: 6.123_233_995_736_766e-17,
    };

    pub fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// `cos x` and `sin x` for a double argument, accurate to double-double
    /// precision for moderate `|x|`.
    pub fn cos_sin(x: f64) -> (Dd, Dd) {
        let k = (x / Self::HALF_PI.hi).round();
        let r = Dd::new(x) - Self::HALF_PI * Dd::new(k);
        let (c, s) = taylor_cos_sin(r);
        match (k as i64).rem_euclid(4) {
            0 => (c, s),
            1 => (-s, c),
            2 => (-c, -s),
            _ => (s, -c),
        }
    }
}

fn taylor_cos_sin(r: Dd) -> (Dd, Dd) {
    let r2 = r * r;
    let mut term = Dd::ONE;
    let mut cos = Dd::ONE;
    let mut k = 0.0;
    loop {
        term = -(term * r2) / Dd::new((k + 1.0) * (k + 2.0));
        k += 2.0;
        cos = cos + term;
        if term.hi.abs() < 1e-34 {
            break;
        }
    }
    let mut term = r;
    let mut sin = r;
    let mut k = 1.0;
    loop {
        term = -(term * r2) / Dd::new((k + 1.0) * (k + 2.0));
        k += 2.0;
        sin = sin + term;
        if term.hi.abs() < 1e-34 {
            break;
        }
    }
    (cos, sin)
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::new(x)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::new(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::new(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

/// Complex number with double-double parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdComplex {
    pub re: Dd,
    pub im: Dd,
}

impl DdComplex {
    pub const ZERO: DdComplex = DdComplex {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    pub const ONE: DdComplex = DdComplex {
        re: Dd::ONE,
        im: Dd::ZERO,
    };

    pub fn new(re: Dd, im: Dd) -> DdComplex {
        DdComplex { re, im }
    }

    pub fn from_c64(z: Complex64) -> DdComplex {
        DdComplex::new(Dd::new(z.re), Dd::new(z.im))
    }

    pub fn real(x: f64) -> DdComplex {
        DdComplex::new(Dd::new(x), Dd::ZERO)
    }

    /// `exp(i theta)` for a double angle.
    pub fn cis(theta: f64) -> DdComplex {
        let (c, s) = Dd::cos_sin(theta);
        DdComplex::new(c, s)
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn scale(self, k: Dd) -> DdComplex {
        DdComplex::new(self.re * k, self.im * k)
    }

    pub fn powi(self, n: usize) -> DdComplex {
        let mut acc = DdComplex::ONE;
        let mut base = self;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl Add for DdComplex {
    type Output = DdComplex;
    fn add(self, b: DdComplex) -> DdComplex {
        DdComplex::new(self.re + b.re, self.im + b.im)
    }
}

impl Sub for DdComplex {
    type Output = DdComplex;
    fn sub(self, b: DdComplex) -> DdComplex {
        DdComplex::new(self.re - b.re, self.im - b.im)
    }
}

impl Mul for DdComplex {
    type Output = DdComplex;
    fn mul(self, b: DdComplex) -> DdComplex {
        DdComplex::new(
            self.re * b.re - self.im * b.im,
            self.re * b.im + self.im * b.re,
        )
    }
}

impl Div for DdComplex {
    type Output = DdComplex;
    fn div(self, b: DdComplex) -> DdComplex {
        let den = b.re * b.re + b.im * b.im;
        let re = (self.re * b.re + self.im * b.im) / den;
        let im = (self.im * b.re - self.re * b.im) / den;
        DdComplex::new(re, im)
    }
}

impl Neg for DdComplex {
    type Output = DdComplex;
    fn neg(self) -> DdComplex {
        DdComplex::new(-self.re, -self.im)
    }
}
