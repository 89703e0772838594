//! Exact scalars: odd prime fields, arbitrary-precision rationals and first-order jets.
//!
//! Every algorithm in the crate is generic over [`Ring`] or [`Field`]. Prime fields are
//! const-generic ([`Fp<P>`]) so the modulus is a compile-time constant and arithmetic
//! inlines to a handful of machine instructions.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// A commutative ring with unit whose elements are cheap enough to clone.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

/// A ring in which division by a divisor that is known to divide exactly is available.
///
/// Used by fraction-free (Bareiss) elimination, which works unchanged over fields and
/// over univariate polynomial rings.
pub trait ExactDiv: Ring {
    /// Returns `self / d`, assuming `d` divides `self`. Panics when `d` is zero.
    fn div_exact(&self, d: &Self) -> Self;
}

/// A field. `characteristic()` is 0 for the rationals.
pub trait Field: ExactDiv + Div<Output = Self> + Eq + Hash {
    fn inv(&self) -> Option<Self>;
    fn characteristic() -> u64;
    /// Reduces a rational number into the field; `None` when the denominator vanishes.
    fn from_rational(q: &BigRational) -> Option<Self>;
    /// A uniformly random element for prime fields; a small random integer for the rationals.
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self;
    /// A nonzero random element.
    fn random_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let x = Self::random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }
    /// The unique cube root when cubing is a bijection (F_p with p ≡ 2 mod 3), or an exact
    /// rational cube root; `None` when no canonical root is available.
    fn cube_root(&self) -> Option<Self>;
    /// Some square root, if one exists in the field.
    fn sqrt(&self) -> Option<Self>;
    /// Canonical integer-or-fraction rendering used in JSON witnesses.
    fn to_json(&self) -> serde_json::Value;
    /// Short human-readable label of the field, such as `Fp 11` or `Q`.
    fn label() -> String;
}

/// Fields with finitely many elements, enumerable by integer representatives.
pub trait FiniteField: Field + Copy {
    const ORDER: u64;
    fn from_u64(n: u64) -> Self;
    fn value(&self) -> u64;
}

pub(crate) const fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The prime field F_P. Values are kept in `[0, P)`.
///
/// `P` must be an odd prime below 2³²; this is checked at compile time when the type is used.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const VALID: () = assert!(P < (1 << 32) && is_odd_prime(P), "modulus must be an odd prime below 2^32");

    #[inline]
    pub fn new(v: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let () = Self::VALID;
        Fp(v % P)
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Fp(self.0 * o.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero in F_p")
    }
}

impl<const P: u64> Ring for Fp<P> {
    #[inline]
    fn zero() -> Self {
        Fp::new(0)
    }
    #[inline]
    fn one() -> Self {
        Fp::new(1)
    }
    fn from_i64(n: i64) -> Self {
        Fp::new(n.rem_euclid(P as i64) as u64)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> ExactDiv for Fp<P> {
    fn div_exact(&self, d: &Self) -> Self {
        *self / *d
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
    fn characteristic() -> u64 {
        P
    }
    fn from_rational(q: &BigRational) -> Option<Self> {
        let p = BigInt::from(P);
        let n = q.numer().mod_floor(&p).to_u64()?;
        let d = q.denom().mod_floor(&p).to_u64()?;
        Fp::new(d).inv().map(|di| Fp::new(n) * di)
    }
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp::new(rng.gen_range(0..P))
    }
    fn cube_root(&self) -> Option<Self> {
        if P % 3 == 2 {
            Some(self.pow((2 * P - 1) / 3))
        } else {
            None
        }
    }
    fn sqrt(&self) -> Option<Self> {
        tonelli_shanks(*self)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(self.0)
    }
    fn label() -> String {
        format!("Fp {P}")
    }
}

impl<const P: u64> FiniteField for Fp<P> {
    const ORDER: u64 = P;
    fn from_u64(n: u64) -> Self {
        Fp::new(n)
    }
    fn value(&self) -> u64 {
        self.0
    }
}

fn tonelli_shanks<const P: u64>(a: Fp<P>) -> Option<Fp<P>> {
    if a.is_zero() {
        return Some(a);
    }
    if a.pow((P - 1) / 2) != Fp::one() {
        return None;
    }
    let mut q = P - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = Fp::<P>::new(2);
    while z.pow((P - 1) / 2) == Fp::one() {
        z = z + Fp::one();
    }
    let mut m = s;
    let mut c = z.pow(q);
    let mut t = a.pow(q);
    let mut r = a.pow(q.div_ceil(2));
    while t != Fp::one() {
        let mut i = 0;
        let mut t2 = t;
        while t2 != Fp::one() {
            t2 = t2 * t2;
            i += 1;
        }
        let b = c.pow(1 << (m - i - 1));
        m = i;
        c = b * b;
        t = t * c;
        r = r * b;
    }
    Some(r)
}

/// Arbitrary-precision rational numbers, always in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Q(pub BigRational);

impl Q {
    pub fn new(n: i64, d: i64) -> Self {
        Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Q(BigRational::from_integer(n))
    }

    /// The integer value when the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.0.is_integer().then(|| self.0.to_integer())
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Q {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Q(self.0 + o.0)
    }
}

impl Sub for Q {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Q(self.0 - o.0)
    }
}

impl Mul for Q {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Q(self.0 * o.0)
    }
}

impl Neg for Q {
    type Output = Self;
    fn neg(self) -> Self {
        Q(-self.0)
    }
}

impl Div for Q {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        assert!(!o.0.is_zero(), "division by zero in Q");
        Q(self.0 / o.0)
    }
}

impl Ring for Q {
    fn zero() -> Self {
        Q(BigRational::zero())
    }
    fn one() -> Self {
        Q(BigRational::one())
    }
    fn from_i64(n: i64) -> Self {
        Q(BigRational::from_integer(BigInt::from(n)))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl ExactDiv for Q {
    fn div_exact(&self, d: &Self) -> Self {
        self.clone() / d.clone()
    }
}

fn integer_cube_root(n: &BigInt) -> Option<BigInt> {
    let neg = n.is_negative();
    let r = n.abs().cbrt();
    (&r * &r * &r == n.abs()).then(|| if neg { -r } else { r })
}

fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Field for Q {
    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Q(self.0.recip()))
    }
    fn characteristic() -> u64 {
        0
    }
    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(Q(q.clone()))
    }
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Q::from_i64(rng.gen_range(-50..=50))
    }
    fn cube_root(&self) -> Option<Self> {
        let n = integer_cube_root(self.0.numer())?;
        let d = integer_cube_root(self.0.denom())?;
        Some(Q(BigRational::new(n, d)))
    }
    fn sqrt(&self) -> Option<Self> {
        let n = integer_sqrt(self.0.numer())?;
        let d = integer_sqrt(self.0.denom())?;
        Some(Q(BigRational::new(n, d)))
    }
    fn to_json(&self) -> serde_json::Value {
        if self.0.is_integer() {
            match self.0.to_integer().to_i64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(self.0.to_string()),
            }
        } else {
            serde_json::Value::from(self.0.to_string())
        }
    }
    fn label() -> String {
        "Q".to_string()
    }
}

/// A degree-one truncated polynomial `v + d·ε` with `ε² = 0`.
///
/// Pushing jets through ring-only algorithms (Pfaffian expansion, polynomial evaluation)
/// yields exact directional derivatives.
#[derive(Clone, PartialEq, Debug)]
pub struct Jet<R> {
    pub v: R,
    pub d: R,
}

impl<R: Ring> Jet<R> {
    pub fn constant(v: R) -> Self {
        Jet { v, d: R::zero() }
    }

    pub fn variable(v: R) -> Self {
        Jet { v, d: R::one() }
    }
}

impl<F: Field> Jet<F> {
    /// Inverse of a jet whose constant term is a unit.
    pub fn inv(&self) -> Option<Self> {
        let vi = self.v.inv()?;
        Some(Jet { v: vi.clone(), d: -(self.d.clone() * vi.clone() * vi) })
    }
}

impl<R: Ring> Add for Jet<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Jet { v: self.v + o.v, d: self.d + o.d }
    }
}

impl<R: Ring> Sub for Jet<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Jet { v: self.v - o.v, d: self.d - o.d }
    }
}

impl<R: Ring> Mul for Jet<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Jet { d: self.v.clone() * o.d + self.d * o.v.clone(), v: self.v * o.v }
    }
}

impl<R: Ring> Neg for Jet<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Jet { v: -self.v, d: -self.d }
    }
}

impl<R: Ring> Ring for Jet<R> {
    fn zero() -> Self {
        Jet::constant(R::zero())
    }
    fn one() -> Self {
        Jet::constant(R::one())
    }
    fn from_i64(n: i64) -> Self {
        Jet::constant(R::from_i64(n))
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero() && self.d.is_zero()
    }
}

/// Primes accepted by the command-line `--prime` switch; each maps to a monomorphized [`Fp`].
pub const SUPPORTED_PRIMES: &[u64] = &[5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101];

/// Invokes `$body` with the type alias `$F` bound to `Fp<p>` for a runtime prime `p` from
/// [`SUPPORTED_PRIMES`]; evaluates to `None` for any other value.
#[macro_export]
macro_rules! with_prime_field {
    ($p:expr, $F:ident => $body:expr) => {{
        macro_rules! __arm {
            ($q:literal) => {{
                type $F = $crate::field::Fp<$q>;
                Some($body)
            }};
        }
        match $p {
            5 => __arm!(5),
            7 => __arm!(7),
            11 => __arm!(11),
            13 => __arm!(13),
            17 => __arm!(17),
            19 => __arm!(19),
            23 => __arm!(23),
            29 => __arm!(29),
            31 => __arm!(31),
            37 => __arm!(37),
            41 => __arm!(41),
            43 => __arm!(43),
            47 => __arm!(47),
            53 => __arm!(53),
            59 => __arm!(59),
            61 => __arm!(61),
            67 => __arm!(67),
            71 => __arm!(71),
            73 => __arm!(73),
            79 => __arm!(79),
            83 => __arm!(83),
            89 => __arm!(89),
            97 => __arm!(97),
            101 => __arm!(101),
            _ => None,
        }
    }};
}
