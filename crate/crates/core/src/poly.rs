//! Univariate polynomials in the monomial basis, with certified real-root
//! isolation (Sturm sequences) and exact maximization on an interval.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Precision, Scalar};

/// `coeffs[i]` is the coefficient of `x^i`. Trailing exact zeros are trimmed,
/// so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
    prec: Precision,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Scalar>, prec: Precision) -> Self {
        let mut p = Polynomial { coeffs, prec };
        p.trim();
        p
    }

    pub fn zero(prec: Precision) -> Self {
        Polynomial {
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn constant(c: Scalar) -> Self {
        let prec = c.precision();
        Self::new(vec![c], prec)
    }

    /// The polynomial `x`.
    pub fn identity(prec: Precision) -> Self {
        Self::new(vec![Scalar::zero(prec), Scalar::one(prec)], prec)
    }

    pub fn from_f64s(coeffs: &[f64], prec: Precision) -> Self {
        Self::new(
            coeffs.iter().map(|&c| Scalar::from_f64(c, prec)).collect(),
            prec,
        )
    }

    /// `∏ (x - r)` over `roots`.
    pub fn from_roots(roots: &[Scalar], prec: Precision) -> Self {
        let x = Self::identity(prec);
        roots
            .iter()
            .fold(Self::constant(Scalar::one(prec)), |acc, r| {
                &acc * &(&x - &Self::constant(r.clone()))
            })
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero(self.prec);
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// `Σ |c_i| |x|^i`, the scale against which an evaluation at `x` is
    /// judged to be zero.
    fn eval_magnitude(&self, x: &Scalar) -> Scalar {
        let ax = x.abs();
        let mut acc = Scalar::zero(self.prec);
        for c in self.coeffs.iter().rev() {
            acc *= &ax;
            acc += c.abs();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Scalar::from_i64(i as i64, self.prec))
            .collect();
        Self::new(coeffs, self.prec)
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect(), self.prec)
    }

    fn max_abs_coeff(&self) -> Scalar {
        let mut best = Scalar::zero(self.prec);
        for c in &self.coeffs {
            if c.cmp_abs(&best) == Ordering::Greater {
                best = c.abs();
            }
        }
        best
    }

    /// Euclidean division `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(self.prec), Self::zero(self.prec)));
        };
        if nd < dd {
            return Ok((Self::zero(self.prec), self.clone()));
        }
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(self.prec); nd - dd + 1];
        for shift in (0..=nd - dd).rev() {
            let q = &rem[shift + dd] / &lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i].sub_mul(&q, c);
            }
            quot[shift] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot, self.prec), Self::new(rem, self.prec)))
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let prec = self.prec.max(rhs.prec);
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => Scalar::zero(prec),
            })
            .collect();
        Polynomial::new(coeffs, prec)
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(prec);
        }
        let mut coeffs = vec![Scalar::zero(prec); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs, prec)
    }
}

/// Real roots of a polynomial on a closed interval.
///
/// Each root is the midpoint of a bracket no wider than the working
/// precision's root width; roots closer than that are reported once.
#[derive(Clone, Debug)]
pub struct RootList {
    pub interval: (Scalar, Scalar),
    pub roots: Vec<Scalar>,
}

/// Sturm sequence `p, p', -rem(p, p'), ...`, each member scaled to unit max
/// coefficient.
#[derive(Clone, Debug)]
struct SturmChain {
    members: Vec<Polynomial>,
}

impl SturmChain {
    fn new(p: &Polynomial) -> Self {
        let tau = p.prec.tolerance();
        let mut members = vec![normalized(p.clone())];
        let d = p.derivative();
        if !d.is_zero() {
            members.push(normalized(d));
        }
        while members.len() >= 2 {
            let n = members.len();
            let rem = members[n - 2].rem_negated(&members[n - 1]);
            let Some(rem) = chop(rem, &tau) else { break };
            members.push(normalized(rem));
        }
        SturmChain { members }
    }

    fn sign_variations(&self, x: &Scalar) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for m in &self.members {
            let s = m.eval(x).signum();
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }
}

impl Polynomial {
    /// `-(self mod divisor)`, without forming the quotient.
    fn rem_negated(&self, divisor: &Self) -> Self {
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() > dd {
            let lead = &divisor.coeffs[dd];
            for shift in (0..rem.len() - dd).rev() {
                let q = &rem[shift + dd] / lead;
                for (i, c) in divisor.coeffs.iter().enumerate().take(dd) {
                    rem[shift + i].sub_mul(&q, c);
                }
            }
            rem.truncate(dd);
        }
        for c in &mut rem {
            *c = -std::mem::replace(c, Scalar::zero(self.prec));
        }
        Self::new(rem, self.prec)
    }

    /// `(p(x), p'(x))` in a single Horner pass.
    fn eval_with_slope(&self, x: &Scalar) -> (Scalar, Scalar) {
        let mut f = Scalar::zero(self.prec);
        let mut df = Scalar::zero(self.prec);
        for c in self.coeffs.iter().rev() {
            df *= x;
            df += &f;
            f *= x;
            f += c;
        }
        (f, df)
    }
}

fn normalized(mut q: Polynomial) -> Polynomial {
    let m = q.max_abs_coeff();
    let inv = Scalar::one(q.prec) / m;
    for c in &mut q.coeffs {
        *c *= &inv;
    }
    q
}

/// Drops leading coefficients that are negligible relative to the largest
/// one; `None` when the whole remainder is negligible against the unit-scaled
/// dividend.
fn chop(mut r: Polynomial, tau: &Scalar) -> Option<Polynomial> {
    let m = r.max_abs_coeff();
    if m <= *tau {
        return None;
    }
    let cut = &m * tau;
    while r
        .coeffs
        .last()
        .is_some_and(|c| c.cmp_abs(&cut) != Ordering::Greater)
    {
        r.coeffs.pop();
    }
    Some(r)
}

fn is_root_at(p: &Polynomial, x: &Scalar, tau: &Scalar) -> bool {
    p.eval(x).abs() <= tau * p.eval_magnitude(x)
}

fn midpoint(a: &Scalar, b: &Scalar) -> Scalar {
    (a + b) / Scalar::from_i64(2, a.precision())
}

/// Root isolation for one polynomial over any number of intervals; the Sturm
/// chain is built once.
#[derive(Clone, Debug)]
pub struct RootFinder {
    poly: Polynomial,
    chain: Option<SturmChain>,
    tau: Scalar,
    eps: Scalar,
}

impl RootFinder {
    pub fn new(p: &Polynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let chain = (p.degree() != Some(0)).then(|| SturmChain::new(p));
        Ok(RootFinder {
            poly: p.clone(),
            chain,
            tau: p.prec.tolerance(),
            eps: p.prec.root_width(),
        })
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    /// All distinct real roots in `[a, b]`, certified by Sturm counting.
    pub fn roots(&self, a: &Scalar, b: &Scalar) -> Result<RootList> {
        if a >= b {
            return Err(Error::InvalidInterval);
        }
        let mut roots = Vec::new();
        let Some(chain) = &self.chain else {
            return Ok(RootList {
                interval: (a.clone(), b.clone()),
                roots,
            });
        };
        let (p, tau, eps) = (&self.poly, &self.tau, &self.eps);
        let mut lo = a.clone();
        let mut hi = b.clone();
        if is_root_at(p, a, tau) {
            roots.push(a.clone());
            lo = a + eps;
        }
        let root_at_b = is_root_at(p, b, tau);
        if root_at_b {
            hi = b - eps;
        }

        if lo < hi {
            let v_lo = chain.sign_variations(&lo);
            let v_hi = chain.sign_variations(&hi);
            let mut stack = vec![(lo, v_lo, hi, v_hi)];
            let mut found = Vec::new();
            while let Some((l, vl, h, vh)) = stack.pop() {
                let count = vl.saturating_sub(vh);
                if count == 0 {
                    continue;
                }
                if count == 1 {
                    found.push(refine_single(p, chain, l, vl, h, eps));
                    continue;
                }
                if &h - &l <= *eps {
                    found.push(midpoint(&l, &h));
                    continue;
                }
                let m = midpoint(&l, &h);
                let vm = chain.sign_variations(&m);
                stack.push((m.clone(), vm, h, vh));
                stack.push((l, vl, m, vm));
            }
            found.sort_by(Scalar::total_cmp);
            roots.extend(found);
        }
        if root_at_b {
            roots.push(b.clone());
        }

        roots.dedup_by(|later, earlier| (&*later - &*earlier).abs() <= *eps);
        Ok(RootList {
            interval: (a.clone(), b.clone()),
            roots,
        })
    }
}

/// All distinct real roots of `p` in `[a, b]`, certified by Sturm counting.
pub fn roots_in_interval(p: &Polynomial, a: &Scalar, b: &Scalar) -> Result<RootList> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a >= b {
        return Err(Error::InvalidInterval);
    }
    RootFinder::new(p)?.roots(a, b)
}

/// Narrows `(l, h]`, known to hold exactly one distinct root, to width `eps`.
fn refine_single(
    p: &Polynomial,
    chain: &SturmChain,
    mut l: Scalar,
    mut vl: usize,
    mut h: Scalar,
    eps: &Scalar,
) -> Scalar {
    let sl = p.eval(&l).signum();
    let sh = p.eval(&h).signum();
    let bracketed = sl != Ordering::Equal && sh != Ordering::Equal && sl != sh;
    if !bracketed {
        // Even multiplicity (or a root sitting on `h`): bisect on counts.
        while &h - &l > *eps {
            let m = midpoint(&l, &h);
            let vm = chain.sign_variations(&m);
            if vl.saturating_sub(vm) == 1 {
                h = m;
            } else {
                l = m;
                vl = vm;
            }
        }
        return midpoint(&l, &h);
    }

    newton_in_bracket(p, l, h, sl, eps)
}

/// The root of `p` in `[a, b]` when `p(a)` and `p(b)` have strictly opposite
/// signs, to width `eps`; `None` when they do not.
pub fn bracketed_root(p: &Polynomial, a: &Scalar, b: &Scalar, eps: &Scalar) -> Option<Scalar> {
    let sa = p.eval(a).signum();
    let sb = p.eval(b).signum();
    if sa == Ordering::Equal || sb == Ordering::Equal || sa == sb {
        return None;
    }
    Some(newton_in_bracket(p, a.clone(), b.clone(), sa, eps))
}

/// A double-precision approximation of the bracketed root, used only as a
/// starting point.
fn f64_seed(p: &Polynomial, l: &Scalar, h: &Scalar, sl: Ordering) -> Option<Scalar> {
    let coeffs: Vec<f64> = p.coeffs.iter().map(Scalar::to_f64).collect();
    let eval = |x: f64| {
        coeffs
            .iter()
            .rev()
            .fold((0.0, 0.0), |(f, df), &c| (f * x + c, df * x + f))
    };
    let (mut lo, mut hi) = (l.to_f64(), h.to_f64());
    let neg_at_lo = sl == Ordering::Less;
    let mut x = 0.5 * (lo + hi);
    for _ in 0..100 {
        let (f, df) = eval(x);
        if f == 0.0 {
            break;
        }
        if (f < 0.0) == neg_at_lo {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - f / df;
        let next = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) {
            x = next;
            break;
        }
        x = next;
    }
    x.is_finite().then(|| Scalar::from_f64(x, p.prec))
}

/// Safeguarded Newton on a sign-change bracket; `sl` is the sign at `l`.
fn newton_in_bracket(
    p: &Polynomial,
    mut l: Scalar,
    mut h: Scalar,
    sl: Ordering,
    eps: &Scalar,
) -> Scalar {
    let quarter = eps / Scalar::from_i64(4, eps.precision());
    let mut x = match f64_seed(p, &l, &h, sl) {
        Some(seed) if seed > l && seed < h => seed,
        _ => midpoint(&l, &h),
    };
    let mut step = &h - &l;
    let mut prev_step = step.clone();
    for _ in 0..(8 * p.prec.bits()) {
        let (fx, dfx) = p.eval_with_slope(&x);
        match fx.signum() {
            Ordering::Equal => return x,
            s if s == sl => l = x.clone(),
            _ => h = x.clone(),
        }
        if &h - &l <= *eps {
            break;
        }
        let newton = if dfx.is_zero() {
            None
        } else {
            let dx = &fx / &dfx;
            let n = &x - &dx;
            let shrinking = dx.abs() * Scalar::from_i64(2, x.precision()) <= prev_step.abs();
            (n > l && n < h && shrinking).then_some((n, dx))
        };
        prev_step = step;
        match newton {
            Some((n, dx)) => {
                step = dx;
                if step.abs() < quarter {
                    // Close the bracket around the Newton limit.
                    for probe in [&n - &quarter, &n + &quarter] {
                        if probe > l && probe < h {
                            if p.eval(&probe).signum() == sl {
                                l = probe;
                            } else {
                                h = probe;
                            }
                        }
                    }
                    if &h - &l <= *eps {
                        break;
                    }
                }
                x = n;
            }
            None => {
                step = (&h - &l) / Scalar::from_i64(2, x.precision());
                x = midpoint(&l, &h);
            }
        }
    }
    midpoint(&l, &h)
}

/// Exact maximization of one polynomial over many intervals; the roots of
/// its derivative are isolated with a shared [`RootFinder`].
#[derive(Clone, Debug)]
pub struct IntervalMaximizer {
    poly: Polynomial,
    slope_roots: Option<RootFinder>,
}

impl IntervalMaximizer {
    pub fn new(p: &Polynomial) -> Self {
        let dp = p.derivative();
        let slope_roots = (!dp.is_zero()).then(|| RootFinder::new(&dp).expect("nonzero"));
        IntervalMaximizer {
            poly: p.clone(),
            slope_roots,
        }
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    /// The endpoints and every root of `p'` strictly inside, ascending.
    pub fn critical_points(&self, a: &Scalar, b: &Scalar) -> Vec<Scalar> {
        if a >= b {
            return vec![a.clone()];
        }
        let mut points = vec![a.clone()];
        if let Some(finder) = &self.slope_roots {
            let inner = finder.roots(a, b).expect("ordered interval");
            points.extend(inner.roots.into_iter().filter(|r| r > a && r < b));
        }
        points.push(b.clone());
        points
    }

    /// Global maximum on `[a, b]` and the smallest point attaining it.
    pub fn max_on(&self, a: &Scalar, b: &Scalar) -> Result<(Scalar, Scalar)> {
        if a > b {
            return Err(Error::InvalidInterval);
        }
        let mut best: Option<(Scalar, Scalar)> = None;
        for x in self.critical_points(a, b) {
            let v = self.poly.eval(&x);
            if best.as_ref().is_none_or(|(_, bv)| v > *bv) {
                best = Some((x, v));
            }
        }
        Ok(best.expect("at least one candidate"))
    }
}

/// Candidates for the extrema of `p` on `[a, b]`: the endpoints and every
/// root of `p'` inside, in ascending order.
pub fn critical_points(p: &Polynomial, a: &Scalar, b: &Scalar) -> Vec<Scalar> {
    IntervalMaximizer::new(p).critical_points(a, b)
}

/// Global maximum of `p` on `[a, b]` and the smallest point attaining it.
pub fn max_on_interval(p: &Polynomial, a: &Scalar, b: &Scalar) -> Result<(Scalar, Scalar)> {
    IntervalMaximizer::new(p).max_on(a, b)
}
