//! Truncated bigraded characters of graded-commutative rings generated by
//! loop-weighted dual basis vectors.
//!
//! A monomial `p^a u^b` records loop weight `a` and eta weight `b`. Degree-0
//! generators contribute `1/(1 - u^e p^w)`, degree -1 generators `(1 - u^e p^w)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::CharError;

const NEG_INF: i64 = i64::MIN / 4;
const POS_INF: i64 = i64::MAX / 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradedGenerator {
    pub loop_weight: i64,
    pub eta_weight: i64,
    /// 0 (symmetric) or -1 (exterior).
    pub degree: i64,
}

impl GradedGenerator {
    pub fn new(loop_weight: i64, eta_weight: i64, degree: i64) -> Result<Self, CharError> {
        if degree != 0 && degree != -1 {
            return Err(CharError::Degree(degree));
        }
        Ok(Self {
            loop_weight,
            eta_weight,
            degree,
        })
    }
}

/// A finite or infinite family of generators sharing eta weight and degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorFamily {
    Single(GradedGenerator),
    /// Loop weights `from, from + 1, ...`.
    Ray { from: i64, eta: i64, degree: i64 },
    /// Loop weights `from, from - 1, ...`.
    DescendingRay { from: i64, eta: i64, degree: i64 },
}

impl GeneratorFamily {
    fn eta(&self) -> i64 {
        match *self {
            Self::Single(g) => g.eta_weight,
            Self::Ray { eta, .. } | Self::DescendingRay { eta, .. } => eta,
        }
    }

    fn degree(&self) -> i64 {
        match *self {
            Self::Single(g) => g.degree,
            Self::Ray { degree, .. } | Self::DescendingRay { degree, .. } => degree,
        }
    }

    fn mirrored(&self) -> Self {
        match *self {
            Self::Single(g) => Self::Single(GradedGenerator {
                loop_weight: -g.loop_weight,
                ..g
            }),
            Self::Ray { from, eta, degree } => Self::DescendingRay {
                from: -from,
                eta,
                degree,
            },
            Self::DescendingRay { from, eta, degree } => Self::Ray {
                from: -from,
                eta,
                degree,
            },
        }
    }
}

/// `p` range `[p_lo, p_hi]` and `u` range `[u_lo, u_hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub p_lo: i64,
    pub p_hi: i64,
    pub u_lo: i64,
    pub u_hi: i64,
}

impl Window {
    pub fn new(p_lo: i64, p_hi: i64, u_lo: i64, u_hi: i64) -> Result<Self, CharError> {
        if p_lo > p_hi || u_lo > u_hi {
            return Err(CharError::Window(format!("empty window p [{p_lo}, {p_hi}], u [{u_lo}, {u_hi}]")));
        }
        if u_hi > 0 {
            return Err(CharError::Window("u range must be non-positive".into()));
        }
        Ok(Self { p_lo, p_hi, u_lo, u_hi })
    }

    /// `p in [-n, n]`, `u in [-n, 0]`.
    pub fn symmetric(n: i64) -> Result<Self, CharError> {
        if n < 0 {
            return Err(CharError::Window(format!("negative size {n}")));
        }
        Self::new(-n, n, -n, 0)
    }

    fn contains(&self, p: i64, u: i64) -> bool {
        (self.p_lo..=self.p_hi).contains(&p) && (self.u_lo..=self.u_hi).contains(&u)
    }

    fn mirrored(&self) -> Self {
        Self {
            p_lo: -self.p_hi,
            p_hi: -self.p_lo,
            ..*self
        }
    }
}

/// Coefficients of a character on a window, with the exactness range and
/// support bounds needed to multiply safely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedCharacter {
    window: Window,
    /// Stored coefficients are exact for `p` in `[exact_lo, exact_hi]`.
    exact_lo: i64,
    exact_hi: i64,
    /// The untruncated series is supported in `p` in `[floor, ceiling]`.
    floor: i64,
    ceiling: i64,
    coeffs: BTreeMap<(i64, i64), BigInt>,
}

impl TruncatedCharacter {
    pub fn one(window: Window) -> Self {
        Self {
            window,
            exact_lo: NEG_INF,
            exact_hi: POS_INF,
            floor: 0,
            ceiling: 0,
            coeffs: BTreeMap::from([((0, 0), BigInt::one())]),
        }
    }

    /// The finite polynomial `sum c p^a u^b` (exact everywhere).
    pub fn polynomial<I>(window: Window, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64, i64)>,
    {
        let mut coeffs = BTreeMap::new();
        for (p, u, c) in terms {
            add_into(&mut coeffs, (p, u), &BigInt::from(c));
        }
        let floor = coeffs.keys().map(|k| k.0).min().unwrap_or(0);
        let ceiling = coeffs.keys().map(|k| k.0).max().unwrap_or(0);
        Self {
            window,
            exact_lo: NEG_INF,
            exact_hi: POS_INF,
            floor,
            ceiling,
            coeffs,
        }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn coeff(&self, p: i64, u: i64) -> BigInt {
        self.coeffs.get(&(p, u)).cloned().unwrap_or_default()
    }

    /// Exact nonzero coefficients inside the window, sorted by `(p, u)`.
    pub fn window_terms(&self) -> Vec<(i64, i64, BigInt)> {
        self.coeffs
            .iter()
            .filter(|((p, u), _)| self.window.contains(*p, *u))
            .map(|(&(p, u), c)| (p, u, c.clone()))
            .collect()
    }

    /// Whether every in-window coefficient is exact.
    pub fn is_exact_on_window(&self) -> bool {
        self.exact_lo <= self.window.p_lo && self.exact_hi >= self.window.p_hi
    }

    /// Coefficientwise equality on the window; both sides must be exact there.
    pub fn equals_on_window(&self, other: &Self) -> Result<bool, CharError> {
        if !self.is_exact_on_window() || !other.is_exact_on_window() {
            return Err(CharError::TruncationUnsafe("comparison outside the exact range".into()));
        }
        Ok(self.window_terms() == other.window_terms())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &other.coeffs {
            add_into(&mut coeffs, *k, &-c);
        }
        Self {
            window: self.window,
            exact_lo: self.exact_lo.max(other.exact_lo),
            exact_hi: self.exact_hi.min(other.exact_hi),
            floor: self.floor.min(other.floor),
            ceiling: self.ceiling.max(other.ceiling),
            coeffs,
        }
    }

    /// Product, exact wherever both inputs determine it; fails unless the
    /// result is exact on the whole window.
    pub fn multiply(&self, other: &Self) -> Result<Self, CharError> {
        let (a, b) = (self, other);
        let exact_hi = sat_add(a.exact_hi, b.floor).min(sat_add(b.exact_hi, a.floor));
        let exact_lo = sat_add(a.exact_lo, b.ceiling).max(sat_add(b.exact_lo, a.ceiling));
        if exact_lo > self.window.p_lo || exact_hi < self.window.p_hi {
            return Err(CharError::TruncationUnsafe(format!(
                "product exact only on p in [{}, {}]",
                show_bound(exact_lo),
                show_bound(exact_hi)
            )));
        }
        let mut coeffs = BTreeMap::new();
        for (&(p1, u1), c1) in &a.coeffs {
            for (&(p2, u2), c2) in &b.coeffs {
                let (p, u) = (p1 + p2, u1 + u2);
                if u >= self.window.u_lo && p >= exact_lo && p <= exact_hi {
                    add_into(&mut coeffs, (p, u), &(c1 * c2));
                }
            }
        }
        Ok(Self {
            window: self.window,
            exact_lo,
            exact_hi,
            floor: sat_add(a.floor, b.floor),
            ceiling: sat_add(a.ceiling, b.ceiling),
            coeffs,
        })
    }

    fn mirrored(&self) -> Self {
        Self {
            window: self.window.mirrored(),
            exact_lo: -self.exact_hi,
            exact_hi: -self.exact_lo,
            floor: -self.ceiling,
            ceiling: -self.floor,
            coeffs: self.coeffs.iter().map(|(&(p, u), c)| ((-p, u), c.clone())).collect(),
        }
    }

    /// Rows `{p, u, coefficient}` of the in-window table.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .window_terms()
            .into_iter()
            .map(|(p, u, c)| json!({"p": p, "u": u, "coefficient": c.to_string()}))
            .collect();
        json!({
            "window": {"p": [self.window.p_lo, self.window.p_hi], "u": [self.window.u_lo, self.window.u_hi]},
            "terms": rows,
        })
    }
}

fn sat_add(a: i64, b: i64) -> i64 {
    if a <= NEG_INF || b <= NEG_INF {
        NEG_INF
    } else if a >= POS_INF || b >= POS_INF {
        POS_INF
    } else {
        a + b
    }
}

fn show_bound(x: i64) -> String {
    match x {
        NEG_INF => "-inf".into(),
        POS_INF => "inf".into(),
        _ => x.to_string(),
    }
}

fn add_into(map: &mut BTreeMap<(i64, i64), BigInt>, k: (i64, i64), c: &BigInt) {
    if c.is_zero() {
        return;
    }
    let e = map.entry(k).or_default();
    *e += c;
    if e.is_zero() {
        map.remove(&k);
    }
}

/// Character of the graded-commutative ring on the given generator families.
///
/// Infinite families must all run in the same direction and every eta weight
/// must be negative, otherwise in-window coefficients would be infinite sums.
pub fn character(families: &[GeneratorFamily], window: Window) -> Result<TruncatedCharacter, CharError> {
    character_with_margin(families, window, 0)
}

/// Like [`character`], but exact on `margin` extra loop degrees at each end
/// of the window, so the result can be multiplied by characters with
/// support of width up to `margin`.
pub fn character_with_margin(
    families: &[GeneratorFamily],
    window: Window,
    margin: i64,
) -> Result<TruncatedCharacter, CharError> {
    let wide = Window {
        p_lo: window.p_lo - margin,
        p_hi: window.p_hi + margin,
        ..window
    };
    let mut c = raw_character(families, wide)?;
    c.window = window;
    Ok(c)
}

fn raw_character(families: &[GeneratorFamily], window: Window) -> Result<TruncatedCharacter, CharError> {
    for f in families {
        if f.eta() >= 0 {
            return Err(CharError::TruncationUnsafe(format!(
                "eta weight {} is not negative, so u-degrees are unbounded",
                f.eta()
            )));
        }
        if f.degree() != 0 && f.degree() != -1 {
            return Err(CharError::Degree(f.degree()));
        }
    }
    let up = families.iter().any(|f| matches!(f, GeneratorFamily::Ray { .. }));
    let down = families.iter().any(|f| matches!(f, GeneratorFamily::DescendingRay { .. }));
    if up && down {
        return Err(CharError::TruncationUnsafe(
            "ascending and descending generator rays mixed: coefficients are infinite sums".into(),
        ));
    }
    if down {
        let mirrored: Vec<GeneratorFamily> = families.iter().map(GeneratorFamily::mirrored).collect();
        return Ok(ascending_character(&mirrored, window.mirrored(), up || down).mirrored());
    }
    Ok(ascending_character(families, window, up))
}

fn ascending_character(families: &[GeneratorFamily], window: Window, infinite: bool) -> TruncatedCharacter {
    let budget = -window.u_lo;
    // lowest reachable p: odd generators are used at most once, even ones up to `budget` times
    let mut sym_min = 0i64;
    let mut odd_sum = 0i64;
    let mut all_min = 0i64;
    for f in families {
        let (lo, degree, single) = match *f {
            GeneratorFamily::Single(g) => (g.loop_weight, g.degree, true),
            GeneratorFamily::Ray { from, degree, .. } => (from, degree, false),
            GeneratorFamily::DescendingRay { .. } => unreachable!("mirrored before this point"),
        };
        all_min = all_min.min(lo);
        if degree == 0 {
            sym_min = sym_min.min(lo);
        } else if single {
            odd_sum += lo.min(0);
        } else {
            odd_sum += (lo..0).sum::<i64>();
        }
    }
    let low = (budget * all_min).max(odd_sum + budget * sym_min);
    // partial products above `cut` can never come back into the window
    let cut = if infinite { window.p_hi - low } else { POS_INF };
    let mut gens = Vec::new();
    for f in families {
        match *f {
            GeneratorFamily::Single(g) => gens.push(g),
            GeneratorFamily::Ray { from, eta, degree } => {
                gens.extend((from..=cut.max(from - 1)).map(|w| GradedGenerator {
                    loop_weight: w,
                    eta_weight: eta,
                    degree,
                }));
            }
            GeneratorFamily::DescendingRay { .. } => unreachable!(),
        }
    }
    let mut acc: BTreeMap<(i64, i64), BigInt> = BTreeMap::from([((0, 0), BigInt::one())]);
    for g in gens {
        let mut next = BTreeMap::new();
        for (&(p, u), c) in &acc {
            let mut j = 0i64;
            loop {
                let (pp, uu) = (p + j * g.loop_weight, u + j * g.eta_weight);
                if uu < window.u_lo || pp > cut {
                    break;
                }
                let sign = if g.degree == -1 && j == 1 { -BigInt::one() } else { BigInt::one() };
                add_into(&mut next, (pp, uu), &(c * sign));
                j += 1;
                if g.degree == -1 && j > 1 {
                    break;
                }
            }
        }
        acc = next;
    }
    let (exact_hi, floor, ceiling) = if infinite {
        acc.retain(|&(p, _), _| p <= window.p_hi);
        (window.p_hi, low, POS_INF)
    } else {
        let lo = acc.keys().map(|k| k.0).min().unwrap_or(0);
        let hi = acc.keys().map(|k| k.0).max().unwrap_or(0);
        (POS_INF, lo, hi)
    };
    TruncatedCharacter {
        window,
        exact_lo: NEG_INF,
        exact_hi,
        floor,
        ceiling,
        coeffs: acc,
    }
}

fn check_degree(gens: &[GradedGenerator], want: i64) -> Result<(), CharError> {
    match gens.iter().find(|g| g.degree != want) {
        Some(g) => Err(CharError::Degree(g.degree)),
        None => Ok(()),
    }
}

/// Product of `1/(1 - u^e p^w)` over degree-0 generators.
pub fn sym_character(gens: &[GradedGenerator], window: Window) -> Result<TruncatedCharacter, CharError> {
    check_degree(gens, 0)?;
    let fams: Vec<GeneratorFamily> = gens.iter().copied().map(GeneratorFamily::Single).collect();
    character(&fams, window)
}

/// Product of `(1 - u^e p^w)` over degree -1 generators.
pub fn ext_character(gens: &[GradedGenerator], window: Window) -> Result<TruncatedCharacter, CharError> {
    check_degree(gens, -1)?;
    let fams: Vec<GeneratorFamily> = gens.iter().copied().map(GeneratorFamily::Single).collect();
    character(&fams, window)
}

/// Dual basis of `O = C[[t]]`: weights `0, 1, 2, ...`.
pub fn hr0_classical() -> Vec<GeneratorFamily> {
    vec![GeneratorFamily::Ray {
        from: 0,
        eta: -1,
        degree: 0,
    }]
}

/// Dual basis of `tO`.
pub fn z_plus() -> Vec<GeneratorFamily> {
    vec![GeneratorFamily::Ray {
        from: 1,
        eta: -1,
        degree: 0,
    }]
}

/// `Sym(O^v)` with one odd generator dual to `t^{-1}`.
pub fn z_minus() -> Vec<GeneratorFamily> {
    let mut g = hr0_classical();
    g.push(GeneratorFamily::Single(GradedGenerator {
        loop_weight: -1,
        eta_weight: -1,
        degree: -1,
    }));
    g
}

/// Odd generators dual to `t^{-1}, ..., t^{-m}` (the quotient `t^{-m}O/O`).
pub fn polar_part(m: i64) -> Vec<GradedGenerator> {
    (1..=m)
        .map(|k| GradedGenerator {
            loop_weight: -k,
            eta_weight: -1,
            degree: -1,
        })
        .collect()
}

/// Odd generators for the whole of `K/O`.
pub fn polar_ray() -> GeneratorFamily {
    GeneratorFamily::DescendingRay {
        from: -1,
        eta: -1,
        degree: -1,
    }
}

/// Result of solving `chi(Z) = (1 - u^b p^a) chi(base)` on a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistSolution {
    pub name: String,
    /// `(a, b)`: loop and eta exponent of the twist.
    pub twist: (i64, i64),
    pub exact: bool,
}

/// Finds the monomial twist with `chi(z) = (1 - u^b p^a) chi(base)` and
/// verifies it on the whole window.
pub fn solve_twist(
    name: &str,
    z: &TruncatedCharacter,
    base: &TruncatedCharacter,
) -> Result<TwistSolution, CharError> {
    let window = z.window();
    let diff = z.sub(base);
    let lead = diff
        .window_terms()
        .into_iter()
        .max_by_key(|(p, u, _)| (*u, -*p))
        .ok_or_else(|| CharError::NoTwist("characters already agree".into()))?;
    let (a, b, c) = lead;
    if c != -BigInt::one() {
        return Err(CharError::NoTwist(format!("leading residual coefficient {c} at p^{a} u^{b}")));
    }
    let factor = TruncatedCharacter::polynomial(window, [(0, 0, 1), (a, b, -1)]);
    let predicted = factor.multiply(base)?;
    if !predicted.equals_on_window(z)? {
        let residual = z.sub(&predicted);
        let first = residual.window_terms().into_iter().next();
        return Err(CharError::NoTwist(format!("{name}: residual term {first:?}")));
    }
    Ok(TwistSolution {
        name: name.to_string(),
        twist: (a, b),
        exact: true,
    })
}

/// Checks of the two abelian short exact sequences and the product formula
/// for the ring of the full affine Grassmannian slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianReport {
    pub window: Window,
    pub sequences: Vec<TwistSolution>,
    /// `(M, holds)` for the truncation `t^{-M}O/O`.
    pub truncations: Vec<(i64, bool)>,
    /// The full product was refused as truncation-unsafe.
    pub full_product_refused: bool,
}

impl AbelianReport {
    /// Loop exponent difference `a_2 - a_1` of the two solved twists.
    pub fn loop_offset(&self) -> i64 {
        self.sequences[1].twist.0 - self.sequences[0].twist.0
    }

    pub fn all_ok(&self) -> bool {
        self.sequences.iter().all(|s| s.exact) && self.truncations.iter().all(|t| t.1) && self.full_product_refused
    }

    pub fn to_json(&self) -> Value {
        json!({
            "window": {"p": [self.window.p_lo, self.window.p_hi], "u": [self.window.u_lo, self.window.u_hi]},
            "sequences": self.sequences.iter().map(|s| json!({
                "name": s.name,
                "twist": {"p": s.twist.0, "u": s.twist.1},
                "exact": s.exact,
            })).collect::<Vec<_>>(),
            "truncations": self.truncations.iter().map(|(m, ok)| json!({"m": m, "holds": ok})).collect::<Vec<_>>(),
            "full_product_refused": self.full_product_refused,
        })
    }
}

/// Runs both sequence checks on `window`, plus the truncated product identities for `M = 1..=5`.
pub fn verify_abelian_sequences(window: Window) -> Result<AbelianReport, CharError> {
    if window.p_hi < 5 || window.p_lo > -5 {
        return Err(CharError::Window("need p range containing [-5, 5]".into()));
    }
    // wide enough for the support of every polynomial factor below
    let base = character_with_margin(&hr0_classical(), window, 16)?;
    let first = solve_twist("Z_{1,-1}", &character(&z_plus(), window)?, &base)?;
    let second = solve_twist("Z_{-1,1}", &character(&z_minus(), window)?, &base)?;
    let mut truncations = Vec::new();
    for m in 1..=5 {
        let mut fams = hr0_classical();
        fams.extend(polar_part(m).into_iter().map(GeneratorFamily::Single));
        let direct = character(&fams, window)?;
        let product = base.multiply(&ext_character(&polar_part(m), window)?)?;
        truncations.push((m, direct.equals_on_window(&product)?));
    }
    let mut full = hr0_classical();
    full.push(polar_ray());
    let full_product_refused = matches!(character(&full, window), Err(CharError::TruncationUnsafe(_)));
    Ok(AbelianReport {
        window,
        sequences: vec![first, second],
        truncations,
        full_product_refused,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(w: i64, e: i64, d: i64) -> GradedGenerator {
        GradedGenerator::new(w, e, d).unwrap()
    }

    #[test]
    fn geometric_series() {
        let w = Window::new(0, 3, -10, 0).unwrap();
        let c = sym_character(&[g(1, -1, 0)], w).unwrap();
        let terms: Vec<_> = c.window_terms().into_iter().map(|(p, u, c)| (p, u, c.to_string())).collect();
        let want: Vec<_> = (0..=3).map(|k| (k, -k, "1".to_string())).collect();
        assert_eq!(terms, want);
    }

    #[test]
    fn empty_and_exterior() {
        let w = Window::symmetric(4).unwrap();
        assert_eq!(sym_character(&[], w).unwrap().window_terms(), vec![(0, 0, BigInt::one())]);
        let e = ext_character(&[g(-1, -1, -1)], w).unwrap();
        assert_eq!(e.window_terms(), vec![(-1, -1, -BigInt::one()), (0, 0, BigInt::one())]);
        assert_eq!(ext_character(&[g(-1, -1, -1), g(-2, -1, -1)], w).unwrap().window_terms().len(), 4);
        assert!(matches!(sym_character(&[g(1, -1, -1)], w), Err(CharError::Degree(-1))));
    }

    #[test]
    fn dropping_the_weight_zero_generator() {
        let w = Window::symmetric(8).unwrap();
        let big = character_with_margin(&hr0_classical(), w, 1).unwrap();
        let small = character(&z_plus(), w).unwrap();
        let factor = TruncatedCharacter::polynomial(w, [(0, 0, 1), (0, -1, -1)]);
        assert!(factor.multiply(&big).unwrap().equals_on_window(&small).unwrap());
    }

    #[test]
    fn mixed_rays_are_refused() {
        let w = Window::symmetric(6).unwrap();
        let mut fams = hr0_classical();
        fams.push(polar_ray());
        assert!(matches!(character(&fams, w), Err(CharError::TruncationUnsafe(_))));
        let zero_eta = [GeneratorFamily::Single(g(1, 0, 0))];
        assert!(matches!(character(&zero_eta, w), Err(CharError::TruncationUnsafe(_))));
    }

    #[test]
    fn descending_ray_alone() {
        let w = Window::symmetric(6).unwrap();
        let c = character(&[polar_ray()], w).unwrap();
        let finite = ext_character(&polar_part(12), w).unwrap();
        assert!(c.equals_on_window(&finite).unwrap());
    }

    #[test]
    fn abelian_twists() {
        let r = verify_abelian_sequences(Window::symmetric(10).unwrap()).unwrap();
        assert_eq!(r.sequences[0].twist, (0, -1));
        assert_eq!(r.sequences[1].twist, (-1, -1));
        assert_eq!(r.loop_offset(), -1);
        assert!(r.all_ok());
    }
}
