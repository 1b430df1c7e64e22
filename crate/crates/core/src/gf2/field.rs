use super::matrix::BitMatrix;
use crate::error::{domain, Result};

/// Smallest primitive polynomial of each degree 1..=8, bit `i` holding the
/// coefficient of `x^i`.
pub const DEFAULT_PRIMITIVE_POLYS: [u32; 8] = [
    0b11,         // x + 1
    0b111,        // x^2 + x + 1
    0b1011,       // x^3 + x + 1
    0b1_0011,     // x^4 + x + 1
    0b10_0101,    // x^5 + x^2 + 1
    0b100_0011,   // x^6 + x + 1
    0b1000_0011,  // x^7 + x + 1
    0b1_0001_1101, // x^8 + x^4 + x^3 + x^2 + 1
];

pub const MAX_EXTENSION_DEGREE: u32 = 16;

/// GF(2^m) with log/antilog tables.
///
/// Elements are integers in `0..q`; bit `i` is the coefficient of `x^i` in the
/// polynomial basis. The tables are built from a generator of the
/// multiplicative group, which is `x` itself when the defining polynomial is
/// primitive.
#[derive(Clone, Debug)]
pub struct GfField {
    m: u32,
    poly: u32,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl GfField {
    /// Field with the default polynomial for `m` (tabulated for m ≤ 8, the
    /// smallest primitive polynomial found by search otherwise).
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 || m > MAX_EXTENSION_DEGREE {
            return domain(format!("extension degree {m} outside 1..={MAX_EXTENSION_DEGREE}"));
        }
        let poly = if m <= 8 {
            DEFAULT_PRIMITIVE_POLYS[m as usize - 1]
        } else {
            smallest_primitive_poly(m)
        };
        Self::with_poly(m, poly)
    }

    /// Field defined by an explicit polynomial, which must have degree `m` and
    /// be irreducible.
    pub fn with_poly(m: u32, poly: u32) -> Result<Self> {
        if m == 0 || m > MAX_EXTENSION_DEGREE {
            return domain(format!("extension degree {m} outside 1..={MAX_EXTENSION_DEGREE}"));
        }
        if poly >> m != 1 {
            return domain(format!("polynomial {poly:#x} does not have degree {m}"));
        }
        if !is_irreducible(poly) {
            return domain(format!("polynomial {poly:#x} is reducible over GF(2)"));
        }
        let q = 1u32 << m;
        let generator = (1..q)
            .find(|&g| multiplicative_order(g, poly, m) == q - 1)
            .expect("the multiplicative group of a field is cyclic");
        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for (i, e) in exp.iter_mut().enumerate() {
            *e = x;
            log[x as usize] = i as u32;
            x = poly_mulmod(x, generator, poly, m);
        }
        Ok(GfField {
            m,
            poly,
            generator,
            exp,
            log,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        1 << self.m
    }

    pub fn poly(&self) -> u32 {
        self.poly
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    /// `generator^i`.
    pub fn antilog(&self, i: u32) -> u32 {
        self.exp[(i % (self.q() - 1)) as usize]
    }

    /// Discrete log base the generator. Panics on zero.
    pub fn log(&self, a: u32) -> u32 {
        assert!(a != 0 && a < self.q(), "log of {a} undefined");
        self.log[a as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(s % (self.q() - 1)) as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        let l = self.log[a as usize];
        self.exp[((self.q() - 1 - l) % (self.q() - 1)) as usize]
    }

    /// Binary `m × m` matrix of `x ↦ a·x` in the polynomial basis:
    /// column `j` holds the bits of `a·x^j`.
    pub fn companion(&self, a: u32) -> BitMatrix {
        assert!(a < self.q(), "{a} is not a field element");
        let m = self.m as usize;
        let mut t = BitMatrix::zeros(m, m);
        for j in 0..m {
            let col = self.mul(a, 1 << j);
            for i in 0..m {
                if (col >> i) & 1 == 1 {
                    t.set(i, j, true);
                }
            }
        }
        t
    }

    /// Bits of `a` as a column vector, least significant first.
    pub fn bits(&self, a: u32) -> Vec<u8> {
        (0..self.m).map(|i| ((a >> i) & 1) as u8).collect()
    }
}

/// Carry-less multiplication modulo `poly` (degree `m`).
pub fn poly_mulmod(a: u32, b: u32, poly: u32, m: u32) -> u32 {
    let mut acc: u64 = 0;
    let (a, b) = (a as u64, b as u64);
    for i in 0..m {
        if (b >> i) & 1 == 1 {
            acc ^= a << i;
        }
    }
    let poly = poly as u64;
    for bit in (m as usize..64).rev() {
        if (acc >> bit) & 1 == 1 {
            acc ^= poly << (bit - m as usize);
        }
    }
    acc as u32
}

fn poly_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn poly_mod(mut a: u64, b: u64) -> u64 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

/// Irreducibility by trial division with every polynomial of degree at most
/// `deg/2`.
pub fn is_irreducible(poly: u32) -> bool {
    let p = poly as u64;
    let d = poly_degree(p);
    if d < 1 {
        return false;
    }
    (2u64..(1u64 << (d / 2 + 1))).all(|f| poly_degree(f) < 1 || poly_degree(f) > d / 2 || poly_mod(p, f) != 0)
}

fn multiplicative_order(g: u32, poly: u32, m: u32) -> u32 {
    let q1 = (1u32 << m) - 1;
    let mut x = g;
    let mut order = 1;
    while x != 1 {
        x = poly_mulmod(x, g, poly, m);
        order += 1;
        if order > q1 {
            return 0;
        }
    }
    order
}

/// Irreducible with `x` generating the full multiplicative group.
pub fn is_primitive(poly: u32) -> bool {
    let m = poly_degree(poly as u64);
    if m < 1 || !is_irreducible(poly) {
        return false;
    }
    let m = m as u32;
    if m == 1 {
        // GF(2): the group {1} is generated by 1 = x mod (x+1)
        return poly == 0b11;
    }
    multiplicative_order(0b10, poly, m) == (1 << m) - 1
}

pub fn smallest_primitive_poly(m: u32) -> u32 {
    ((1u32 << m)..(1u32 << (m + 1)))
        .find(|&p| is_primitive(p))
        .expect("primitive polynomials exist for every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_table_is_smallest_primitive() {
        for m in 1..=8u32 {
            let p = DEFAULT_PRIMITIVE_POLYS[m as usize - 1];
            assert!(is_primitive(p), "m={m}");
            assert_eq!(smallest_primitive_poly(m), p, "m={m}");
        }
    }

    #[test]
    fn rejects_reducible_and_wrong_degree() {
        assert!(GfField::with_poly(2, 0b101).is_err()); // (x+1)^2
        assert!(GfField::with_poly(3, 0b111).is_err());
        assert!(GfField::new(0).is_err());
        assert!(GfField::new(17).is_err());
    }

    #[test]
    fn irreducible_non_primitive_still_works() {
        // x^4 + x^3 + x^2 + x + 1 is irreducible; x has order 5
        let f = GfField::with_poly(4, 0b11111).unwrap();
        assert_ne!(f.generator(), 2);
        for a in 0..16 {
            for b in 0..16 {
                assert_eq!(f.mul(a, b), poly_mulmod(a, b, 0b11111, 4));
            }
        }
    }

    #[test]
    fn tables_invert_and_match_polynomial_product() {
        for m in 1..=6 {
            let f = GfField::new(m).unwrap();
            for x in 1..f.q() {
                assert_eq!(f.antilog(f.log(x)), x);
                assert_eq!(f.mul(x, f.inv(x)), 1);
            }
            for a in 0..f.q() {
                for b in 0..f.q() {
                    assert_eq!(f.mul(a, b), poly_mulmod(a, b, f.poly(), m));
                }
            }
        }
    }

    #[test]
    fn companion_gf2_and_gf4() {
        let f2 = GfField::new(1).unwrap();
        assert_eq!(f2.companion(1), BitMatrix::identity(1));
        let f4 = GfField::new(2).unwrap();
        // alpha = 0b10; alpha*1 = (0,1), alpha*alpha = alpha+1 = (1,1)
        let t = f4.companion(0b10);
        assert_eq!(t, BitMatrix::from_strs(&["01", "11"]).unwrap());
        assert_eq!(f4.companion(0), BitMatrix::zeros(2, 2));
        assert_eq!(f4.companion(1), BitMatrix::identity(2));
    }

    #[test]
    fn companion_is_ring_homomorphism() {
        for m in 1..=4 {
            let f = GfField::new(m).unwrap();
            for a in 0..f.q() {
                let ta = f.companion(a);
                for b in 0..f.q() {
                    let tb = f.companion(b);
                    // T(a)·bits(b) = bits(a·b)
                    assert_eq!(ta.mul_vec(&f.bits(b)), f.bits(f.mul(a, b)));
                    assert_eq!(ta.mul(&tb), f.companion(f.mul(a, b)));
                    let mut sum = ta.clone();
                    for i in 0..m as usize {
                        for j in 0..m as usize {
                            if tb.get(i, j) {
                                sum.toggle(i, j);
                            }
                        }
                    }
                    assert_eq!(sum, f.companion(a ^ b));
                }
            }
        }
    }
}
