//! Multivariate gcd over the rationals by recursive primitive
//! pseudo-remainder sequences.
//!
//! Laurent inputs are reduced to polynomials first; monomials are units in
//! the Laurent ring, so the result carries no monomial content. The result
//! is normalized so that its lex-least coefficient is 1.

use super::Poly;

/// Greatest common divisor of two Laurent polynomials.
pub fn gcd<const N: usize>(a: &Poly<N>, b: &Poly<N>) -> Poly<N> {
    if a.is_zero() {
        return normalize(&strip(b));
    }
    if b.is_zero() {
        return normalize(&strip(a));
    }
    let g = gcd_from(&strip(a), &strip(b), 0);
    normalize(&strip(&g))
}

fn strip<const N: usize>(p: &Poly<N>) -> Poly<N> {
    let m = p.min_exponents();
    let mut n = [0; N];
    for i in 0..N {
        n[i] = -m[i];
    }
    p.shift(&n)
}

fn normalize<const N: usize>(p: &Poly<N>) -> Poly<N> {
    match p.lex_least() {
        Some((_, c)) => p.scale(&c.recip()),
        None => Poly::zero(),
    }
}

/// Coefficients of `p` viewed as a polynomial in variable `var`.
fn coefficients<const N: usize>(p: &Poly<N>, var: usize) -> Vec<Poly<N>> {
    let deg = p.degree_in(var).max(0) as usize;
    let mut out = vec![Poly::zero(); deg + 1];
    for (e, c) in p.terms() {
        let mut f = *e;
        let k = f[var] as usize;
        f[var] = 0;
        out[k].add_term(f, c);
    }
    out
}

fn involves<const N: usize>(p: &Poly<N>, var: usize) -> bool {
    p.terms().any(|(e, _)| e[var] != 0)
}

fn content<const N: usize>(p: &Poly<N>, var: usize) -> Poly<N> {
    let mut g = Poly::zero();
    for c in coefficients(p, var) {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c } else { gcd_from(&g, &c, var + 1) };
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

fn primitive<const N: usize>(p: &Poly<N>, var: usize) -> Poly<N> {
    let c = content(p, var);
    p.div_exact(&c).expect("content divides")
}

fn with_var_power<const N: usize>(p: &Poly<N>, var: usize, k: i64) -> Poly<N> {
    let mut s = [0; N];
    s[var] = k;
    p.shift(&s)
}

/// Pseudo-remainder of `a` by `b` in variable `var`.
fn prem<const N: usize>(a: &Poly<N>, b: &Poly<N>, var: usize) -> Poly<N> {
    let n = b.degree_in(var);
    let lb = coefficients(b, var).pop().unwrap_or_else(Poly::zero);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= n {
        let dr = r.degree_in(var);
        let lr = coefficients(&r, var).pop().unwrap();
        r = &(&lb * &r) - &with_var_power(&(&lr * b), var, dr - n);
    }
    r
}

fn gcd_from<const N: usize>(a: &Poly<N>, b: &Poly<N>, var: usize) -> Poly<N> {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if var == N || a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if !involves(a, var) && !involves(b, var) {
        return gcd_from(a, b, var + 1);
    }
    let ca = content(a, var);
    let cb = content(b, var);
    let c = gcd_from(&ca, &cb, var + 1);
    let mut r0 = a.div_exact(&ca).expect("content divides");
    let mut r1 = b.div_exact(&cb).expect("content divides");
    if r0.degree_in(var) < r1.degree_in(var) {
        std::mem::swap(&mut r0, &mut r1);
    }
    let g = loop {
        if r1.degree_in(var) == 0 {
            // r1 is free of var and primitive, so it is a unit here.
            break Poly::one();
        }
        let r = prem(&r0, &r1, var);
        if r.is_zero() {
            break r1;
        }
        let r = primitive(&r, var);
        r0 = r1;
        r1 = r;
    };
    let g = if g.is_zero() { Poly::one() } else { g };
    &c * &g
}
