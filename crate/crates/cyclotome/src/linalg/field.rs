//! Exact coefficient fields: Q, F_p and Q(zeta_n).
//!
//! A [`Field`] is a cheap handle (an `Arc`) that owns whatever context the
//! arithmetic needs, and an [`Elem`] is a bare payload. All arithmetic goes
//! through the field so that cyclotomic elements can be reduced modulo the
//! cyclotomic polynomial without each element carrying it around.

use super::rat::Rat;
use super::LinalgError;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    /// Prime below 2^32.
    PrimeField(u64),
    /// Q adjoined a primitive n-th root of unity `z`.
    Cyclotomic(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Q(Rat),
    P(u64),
    /// Coefficients of 1, z, ..., z^(d-1), always of length d = phi(n).
    C(Box<[Rat]>),
}

struct Inner {
    spec: FieldSpec,
    /// Monic cyclotomic polynomial, low degree first (cyclotomic only).
    modulus: Vec<i64>,
}

#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn poly_mul_int(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

/// Exact division of integer polynomials by a monic divisor.
fn poly_div_int(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    let mut acc = vec![1i64];
    for d in 1..n {
        if n.is_multiple_of(d) {
            acc = poly_mul_int(&acc, &cyclotomic_polynomial(d));
        }
    }
    poly_div_int(&num, &acc)
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Field, LinalgError> {
        let modulus = match &spec {
            FieldSpec::Rationals => Vec::new(),
            FieldSpec::PrimeField(p) => {
                if *p >= 1 << 32 || !is_prime(*p) {
                    return Err(LinalgError::BadField(format!("{p} is not a prime below 2^32")));
                }
                Vec::new()
            }
            FieldSpec::Cyclotomic(n) => {
                if *n == 0 || *n > 200 {
                    return Err(LinalgError::BadField(format!("cyclotomic order {n} out of range")));
                }
                cyclotomic_polynomial(*n)
            }
        };
        Ok(Field(Arc::new(Inner { spec, modulus })))
    }

    pub fn rationals() -> Field {
        Field::new(FieldSpec::Rationals).unwrap()
    }

    pub fn cyclotomic(n: u32) -> Field {
        Field::new(FieldSpec::Cyclotomic(n)).expect("valid cyclotomic order")
    }

    pub fn prime(p: u64) -> Result<Field, LinalgError> {
        Field::new(FieldSpec::PrimeField(p))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn name(&self) -> String {
        match self.spec() {
            FieldSpec::Rationals => "Q".into(),
            FieldSpec::PrimeField(p) => format!("F{p}"),
            FieldSpec::Cyclotomic(n) => format!("Q(zeta{n})"),
        }
    }

    /// Parse names like `Q`, `Rationals`, `F7`, `Cyclotomic(4)`, `Q(zeta4)`.
    pub fn from_name(s: &str) -> Result<Field, LinalgError> {
        let t = s.trim();
        let bad = || LinalgError::BadField(format!("unknown field {s:?}"));
        if t == "Q" || t.eq_ignore_ascii_case("rationals") {
            return Field::new(FieldSpec::Rationals);
        }
        if let Some(p) = t.strip_prefix("PrimeField(").and_then(|r| r.strip_suffix(')')) {
            return Field::prime(p.trim().parse().map_err(|_| bad())?);
        }
        if let Some(p) = t.strip_prefix('F').filter(|r| r.chars().all(|c| c.is_ascii_digit()) && !r.is_empty()) {
            return Field::prime(p.parse().map_err(|_| bad())?);
        }
        for pre in ["Cyclotomic(", "Q(zeta"] {
            if let Some(n) = t.strip_prefix(pre).and_then(|r| r.strip_suffix(')')) {
                return Field::new(FieldSpec::Cyclotomic(n.trim().parse().map_err(|_| bad())?));
            }
        }
        Err(bad())
    }

    fn degree(&self) -> usize {
        self.0.modulus.len().saturating_sub(1)
    }

    pub fn zero(&self) -> Elem {
        self.from_rat(&Rat::ZERO).unwrap()
    }

    pub fn one(&self) -> Elem {
        self.from_rat(&Rat::ONE).unwrap()
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.from_rat(&Rat::int(n)).unwrap()
    }

    /// Fails in F_p when the denominator is divisible by p.
    pub fn from_rat(&self, r: &Rat) -> Result<Elem, LinalgError> {
        Ok(match self.spec() {
            FieldSpec::Rationals => Elem::Q(r.clone()),
            FieldSpec::PrimeField(p) => Elem::P(
                r.mod_p(*p)
                    .ok_or_else(|| LinalgError::Parse(format!("{r} has no image in F{p}")))?,
            ),
            FieldSpec::Cyclotomic(_) => {
                let mut v = vec![Rat::ZERO; self.degree()];
                v[0] = r.clone();
                Elem::C(v.into_boxed_slice())
            }
        })
    }

    /// The chosen primitive root of unity, if the field has one beyond +-1.
    pub fn root_of_unity(&self) -> Option<Elem> {
        match self.spec() {
            FieldSpec::Cyclotomic(n) if *n > 2 => {
                let mut v = vec![Rat::ZERO; self.degree()];
                v[1] = Rat::ONE;
                Some(Elem::C(v.into_boxed_slice()))
            }
            FieldSpec::Cyclotomic(2) => Some(self.from_i64(-1)),
            _ => None,
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Q(r) => r.is_zero(),
            Elem::P(x) => *x == 0,
            Elem::C(v) => v.iter().all(Rat::is_zero),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        match a {
            Elem::Q(r) => r.is_one(),
            Elem::P(x) => *x == 1,
            Elem::C(v) => v[0].is_one() && v[1..].iter().all(Rat::is_zero),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Q(x), Elem::Q(y)) => Elem::Q(x.add(y)),
            (Elem::P(x), Elem::P(y)) => {
                let p = self.p();
                Elem::P((x + y) % p)
            }
            (Elem::C(x), Elem::C(y)) => Elem::C(x.iter().zip(y.iter()).map(|(s, t)| s.add(t)).collect()),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Q(x) => Elem::Q(x.neg()),
            Elem::P(x) => Elem::P((self.p() - x) % self.p()),
            Elem::C(x) => Elem::C(x.iter().map(Rat::neg).collect()),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Q(x), Elem::Q(y)) => Elem::Q(x.mul(y)),
            (Elem::P(x), Elem::P(y)) => Elem::P(mul_mod(*x, *y, self.p())),
            (Elem::C(x), Elem::C(y)) => Elem::C(self.cyc_mul(x, y).into_boxed_slice()),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem, LinalgError> {
        match a {
            Elem::Q(x) => x.inv().map(Elem::Q).ok_or(LinalgError::DivisionByZero),
            Elem::P(x) => inv_mod(*x, self.p()).map(Elem::P).ok_or(LinalgError::DivisionByZero),
            Elem::C(x) => self.cyc_inv(x).map(|v| Elem::C(v.into_boxed_slice())),
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem, LinalgError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, e: i64) -> Result<Elem, LinalgError> {
        let mut base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Ok(r)
    }

    fn p(&self) -> u64 {
        match self.spec() {
            FieldSpec::PrimeField(p) => *p,
            _ => unreachable!(),
        }
    }

    fn cyc_mul(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let d = self.degree();
        let mut r = vec![Rat::ZERO; 2 * d - 1];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    r[i + j] = r[i + j].add(&a.mul(b));
                }
            }
        }
        self.cyc_reduce(r)
    }

    fn cyc_reduce(&self, mut r: Vec<Rat>) -> Vec<Rat> {
        let m = &self.0.modulus;
        let d = self.degree();
        for k in (d..r.len()).rev() {
            let c = std::mem::replace(&mut r[k], Rat::ZERO);
            if c.is_zero() {
                continue;
            }
            for (j, mj) in m.iter().enumerate().take(d) {
                if *mj != 0 {
                    r[k - d + j] = r[k - d + j].sub(&c.mul(&Rat::int(*mj)));
                }
            }
        }
        r.truncate(d);
        r
    }

    #[allow(clippy::needless_range_loop)]
    fn cyc_inv(&self, x: &[Rat]) -> Result<Vec<Rat>, LinalgError> {
        // Solve (mult by x) c = 1 with dense elimination; d is tiny.
        let d = self.degree();
        let mut rows: Vec<Vec<Rat>> = vec![vec![Rat::ZERO; d + 1]; d];
        let mut zj = vec![Rat::ZERO; d];
        zj[0] = Rat::ONE;
        for j in 0..d {
            let col = self.cyc_mul(x, &zj);
            for i in 0..d {
                rows[i][j] = col[i].clone();
            }
            let mut shifted = vec![Rat::ZERO; d + 1];
            shifted[1..].clone_from_slice(&zj);
            zj = self.cyc_reduce(shifted);
        }
        rows[0][d] = Rat::ONE;
        for c in 0..d {
            let piv = (c..d).find(|&r| !rows[r][c].is_zero()).ok_or(LinalgError::DivisionByZero)?;
            rows.swap(c, piv);
            let inv = rows[c][c].inv().unwrap();
            for v in rows[c].iter_mut() {
                *v = v.mul(&inv);
            }
            for r in 0..d {
                if r != c && !rows[r][c].is_zero() {
                    let f = rows[r][c].clone();
                    for k in c..=d {
                        let t = rows[c][k].mul(&f);
                        rows[r][k] = rows[r][k].sub(&t);
                    }
                }
            }
        }
        Ok(rows.into_iter().map(|r| r[d].clone()).collect())
    }

    /// The rational value of an element, when it has one.
    pub fn as_rat(&self, a: &Elem) -> Option<Rat> {
        match a {
            Elem::Q(r) => Some(r.clone()),
            Elem::P(_) => None,
            Elem::C(v) => v[1..].iter().all(Rat::is_zero).then(|| v[0].clone()),
        }
    }

    pub fn render(&self, a: &Elem) -> String {
        match a {
            Elem::Q(r) => r.to_string(),
            Elem::P(x) => x.to_string(),
            Elem::C(v) => {
                let mut out = String::new();
                for k in (0..v.len()).rev() {
                    let c = &v[k];
                    if c.is_zero() {
                        continue;
                    }
                    let neg = c.signum() < 0;
                    let abs = if neg { c.neg() } else { c.clone() };
                    if neg {
                        out.push('-');
                    } else if !out.is_empty() {
                        out.push('+');
                    }
                    let mono = match k {
                        0 => String::new(),
                        1 => "z".into(),
                        _ => format!("z^{k}"),
                    };
                    if k == 0 {
                        out.push_str(&abs.to_string());
                    } else if abs.is_one() {
                        out.push_str(&mono);
                    } else {
                        out.push_str(&format!("{abs}*{mono}"));
                    }
                }
                if out.is_empty() {
                    "0".into()
                } else {
                    out
                }
            }
        }
    }

    /// Inverse of [`Field::render`]; also accepts any rational in any field.
    pub fn parse(&self, s: &str) -> Result<Elem, LinalgError> {
        let err = || LinalgError::Parse(format!("cannot read {s:?} as an element of {}", self.name()));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        if let Some(r) = Rat::parse(&t) {
            return self.from_rat(&r);
        }
        if !matches!(self.spec(), FieldSpec::Cyclotomic(_)) {
            return Err(err());
        }
        // Split into signed terms.
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for (i, ch) in t.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let z = self.root_of_unity().ok_or_else(err)?;
        let mut acc = self.zero();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(b) => (-1, b.to_string()),
                None => (1, term.strip_prefix('+').unwrap_or(&term).to_string()),
            };
            let (coef, mono) = match body.find('z') {
                None => (body.as_str(), ""),
                Some(pos) => (body[..pos].trim_end_matches('*'), &body[pos..]),
            };
            let coef = if coef.is_empty() { Rat::ONE } else { Rat::parse(coef).ok_or_else(err)? };
            let power: i64 = if mono.is_empty() {
                0
            } else if mono == "z" {
                1
            } else {
                mono.strip_prefix("z^").and_then(|e| e.parse().ok()).ok_or_else(err)?
            };
            let c = self.from_rat(&if sign < 0 { coef.neg() } else { coef })?;
            acc = self.add(&acc, &self.mul(&c, &self.pow(&z, power)?));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn gaussian_rationals() {
        let f = Field::cyclotomic(4);
        let i = f.root_of_unity().unwrap();
        assert_eq!(f.mul(&i, &i), f.from_i64(-1));
        assert_eq!(f.pow(&i, 4).unwrap(), f.one());
        let a = f.parse("z+1").unwrap();
        let b = f.inv(&a).unwrap();
        assert_eq!(f.render(&b), "-1/2*z+1/2");
        assert_eq!(f.mul(&a, &b), f.one());
    }

    #[test]
    fn render_forms() {
        let f = Field::cyclotomic(5);
        let e = f.parse("z^2+1").unwrap();
        assert_eq!(f.render(&e), "z^2+1");
        assert_eq!(f.render(&f.parse("3/4").unwrap()), "3/4");
        let q = Field::rationals();
        assert_eq!(q.render(&q.parse("6/8").unwrap()), "3/4");
    }

    #[test]
    fn prime_fields() {
        assert!(Field::prime(9).is_err());
        let f = Field::prime(7).unwrap();
        assert_eq!(f.parse("1/2").unwrap(), Elem::P(4));
        assert_eq!(f.inv(&Elem::P(3)).unwrap(), Elem::P(5));
        assert!(f.parse("1/7").is_err());
    }

    #[test]
    fn field_names() {
        for n in ["Q", "F7", "Cyclotomic(4)"] {
            Field::from_name(n).unwrap();
        }
        assert_eq!(Field::from_name("Cyclotomic(4)").unwrap().name(), "Q(zeta4)");
        assert!(Field::from_name("R").is_err());
    }
}
