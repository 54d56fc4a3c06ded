//! The triangular-decomposition datum carried by the quantum group: the
//! left action `⇀` of the F-side on the E-side, the right action `↼` of the
//! E-side on the F-side, and the torus-valued pairing `♯`, with their
//! generator values
//!
//! ```text
//! F_i^(N) ⇀ E_j^(M) = d_ij (-1)^N [M-1 choose N] E_i^(M-N)
//! F_i^(N) ↼ E_j^(M) = d_ij (-1)^M [N-1 choose M] F_i^(N-M)
//! F_i^(N) ♯ E_j^(M) = d_(M,N) d_ij [K_i^-1; 0; N]
//! ```
//!
//! and their extension to arbitrary monomials through the compatibility
//! identities of the datum (never through the engine, so agreement with the
//! engine projections is a genuine theorem check, run by
//! [`verify_oracle_equivalence`]).
//!
//! The module also carries the braided structures of both sides (the
//! Yetter-Drinfeld actions and coactions, braided coproducts and braided
//! antipodes), the reconstruction of the product, coproduct and antipode of
//! the whole algebra from the datum ([`reconstruct_product`],
//! [`reconstruct_coproduct`], [`reconstruct_antipode`]), and the axiom
//! sweep [`verify_td_axioms`].

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::report::CheckResult;
use crate::torus_special::{SpecTorusElem, SpecTorusMonomial};
use crate::uq::{
    comultiply, expand_composite, word_weight, Letter, Root, Side, UElem,
    UTensor, UqContext, Word,
};

/// A formal sum of simple-letter words with cyclotomic coefficients; the
/// working representation for braided legs.
type WordSum = Vec<(Word, CycNum)>;

/// Append a single divided-power letter to a word, merging with the last
/// letter when the roots agree (divided powers of the same root vector
/// recombine with a Gaussian binomial).
fn append_letter(ctx: &UqContext, w: &Word, l: Letter, coeff: &CycNum) -> Result<Option<(Word, CycNum)>> {
    if l.exp == 0 {
        return Ok(Some((w.clone(), coeff.clone())));
    }
    let mut out = w.clone();
    if let Some(last) = out.last().copied() {
        if last.root == l.root {
            let binom = ctx.qbinom_xi((last.exp + l.exp) as i64, l.exp as i64)?;
            if binom.is_zero() {
                return Ok(None);
            }
            out.pop();
            out.push(Letter { root: l.root, exp: last.exp + l.exp });
            return Ok(Some((out, coeff * &binom)));
        }
    }
    out.push(l);
    Ok(Some((out, coeff.clone())))
}

/// Expand every composite letter of a word into simple letters, producing a
/// formal sum of simple-letter words.
pub fn expand_word(ctx: &UqContext, w: &Word, side: Side) -> Result<WordSum> {
    let mut acc: WordSum = vec![(Vec::new(), ctx.params().one())];
    for l in w {
        let expansions = expand_composite(ctx, l, side)?;
        let mut next = Vec::new();
        for (word, c) in &acc {
            for (letters, ec) in &expansions {
                let mut cur = vec![(word.clone(), c * ec)];
                for sl in letters {
                    let mut step = Vec::new();
                    for (cw, cc) in cur {
                        if let Some(x) = append_letter(ctx, &cw, *sl, &cc)? {
                            step.push(x);
                        }
                    }
                    cur = step;
                }
                next.extend(cur);
            }
        }
        acc = combine(next);
    }
    Ok(acc)
}

fn combine(sum: WordSum) -> WordSum {
    let mut map: std::collections::BTreeMap<Word, CycNum> = std::collections::BTreeMap::new();
    for (w, c) in sum {
        if c.is_zero() {
            continue;
        }
        match map.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = &*e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
    map.into_iter().collect()
}

/// Expand the E-part (or F-part) of every term of a normal-form element
/// into simple-letter words. The element must be supported on that side
/// only.
fn elem_to_word_sum(ctx: &UqContext, x: &UElem, side: Side) -> Result<WordSum> {
    let mut out: WordSum = Vec::new();
    for (t, c) in x.terms() {
        match side {
            Side::E => {
                if !t.f.is_empty() || !t.torus.is_unit() {
                    return Err(Error::InvalidArgument(format!(
                        "element has non-E factors: {}",
                        x
                    )));
                }
                for (w, wc) in expand_word(ctx, &t.e, Side::E)? {
                    out.push((w, &wc * c));
                }
            }
            Side::F => {
                if !t.e.is_empty() || !t.torus.is_unit() {
                    return Err(Error::InvalidArgument(format!(
                        "element has non-F factors: {}",
                        x
                    )));
                }
                for (w, wc) in expand_word(ctx, &t.f, Side::F)? {
                    out.push((w, &wc * c));
                }
            }
        }
    }
    Ok(combine(out))
}

fn word_sum_to_elem(ctx: &Arc<UqContext>, sum: &WordSum, side: Side) -> Result<UElem> {
    let mut out = UElem::zero(ctx);
    for (w, c) in sum {
        let e = match side {
            Side::E => UElem::from_e_word(ctx, w.clone())?,
            Side::F => UElem::from_f_word(ctx, w.clone())?,
        };
        out = out.add(&e.scalar_mul(c));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Yetter-Drinfeld structure
// ---------------------------------------------------------------------------

/// Character values of a torus element on a word: the group generators act
/// by the Cartan pairing against the word weight, the primitive generators
/// by the derived commutation constants (left action on the E side, right
/// action on the F side).
fn char_values(ctx: &UqContext, w: &Word, side: Side) -> Result<(Vec<CycNum>, Vec<CycNum>)> {
    let rank = ctx.rank();
    let wt = word_weight(rank, w);
    let mut gvals = Vec::with_capacity(rank);
    let mut tvals = Vec::with_capacity(rank);
    for u in 0..rank {
        let mut pairing = 0i64;
        for r in 0..rank {
            pairing += ctx.cartan.entry(u, r) * wt[r];
        }
        gvals.push(ctx.params().xi_pow(pairing));
        let mut c = ctx.params().zero();
        for l in w {
            c = &c + &ctx.t_commutation(u, &l.root, l.exp, side)?;
        }
        if side == Side::F {
            // x <| t_u = x t_u - t_u x = -[t_u, x].
            c = -&c;
        }
        tvals.push(c);
    }
    Ok((gvals, tvals))
}

/// The left action of the torus on the E side (diagonal on words).
pub fn act_left(ctx: &Arc<UqContext>, h: &SpecTorusElem, x: &UElem) -> Result<UElem> {
    let mut out = UElem::zero(ctx);
    for (t, c) in x.terms() {
        let (gv, tv) = char_values(ctx, &t.e, Side::E)?;
        let scalar = h.eval_character(&gv, &tv);
        out = out.add(&UElem::from_triple(ctx, t.clone(), c * &scalar));
    }
    Ok(out)
}

/// The right action of the torus on the F side.
pub fn act_right(ctx: &Arc<UqContext>, x: &UElem, h: &SpecTorusElem) -> Result<UElem> {
    let mut out = UElem::zero(ctx);
    for (t, c) in x.terms() {
        let (gv, tv) = char_values(ctx, &t.f, Side::F)?;
        let scalar = h.eval_character(&gv, &tv);
        out = out.add(&UElem::from_triple(ctx, t.clone(), c * &scalar));
    }
    Ok(out)
}

/// Left coaction on an E-word: `w -> K^(wt w) (x) w`.
pub fn coaction_plus(ctx: &UqContext, w: &Word) -> SpecTorusMonomial {
    let wt = word_weight(ctx.rank(), w);
    let two_ell = 2 * ctx.ell();
    SpecTorusMonomial {
        g: wt.iter().map(|x| x.rem_euclid(two_ell) as u32).collect(),
        t: vec![0; ctx.rank()],
    }
}

/// Right coaction on an F-word: `w -> w (x) K^(-wt w)`.
pub fn coaction_minus(ctx: &UqContext, w: &Word) -> SpecTorusMonomial {
    let wt = word_weight(ctx.rank(), w);
    let two_ell = 2 * ctx.ell();
    SpecTorusMonomial {
        g: wt.iter().map(|x| (-x).rem_euclid(two_ell) as u32).collect(),
        t: vec![0; ctx.rank()],
    }
}

/// Cartan pairing of two weight vectors.
fn weight_pairing(ctx: &UqContext, a: &[i64], b: &[i64]) -> i64 {
    let mut s = 0;
    for u in 0..ctx.rank() {
        for r in 0..ctx.rank() {
            s += a[u] * ctx.cartan.entry(u, r) * b[r];
        }
    }
    s
}

/// Braided two-leg coproduct of a simple-letter word on the given side.
///
/// Letters split as `X^(N) -> sum_(a+b=N) v^(+-ab) X^(a) (x) X^(b)` and the
/// legs multiply with the braiding factor of the Yetter-Drinfeld category:
/// crossing `x` past `w` costs `xi^(wt(w).A.wt(x))` on the E side and
/// `xi^(-wt(x).A.wt(w))` on the F side.
pub fn braided_delta2(ctx: &UqContext, word: &Word, side: Side) -> Result<Vec<(Word, Word, CycNum)>> {
    if word.iter().any(|l| matches!(l.root, Root::Pair(_, _))) {
        let mut out = Vec::new();
        for (w, c) in expand_word(ctx, word, side)? {
            for (u, v, lc) in braided_delta2(ctx, &w, side)? {
                out.push((u, v, &lc * &c));
            }
        }
        return Ok(out);
    }
    let rank = ctx.rank();
    let mut acc: Vec<(Word, Word, CycNum)> = vec![(Vec::new(), Vec::new(), ctx.params().one())];
    for l in word {
        let Root::Simple(_) = l.root else {
            return Err(Error::InvalidArgument(
                "braided coproduct expects simple-letter words".into(),
            ));
        };
        let n = l.exp;
        let mut next = Vec::new();
        for (u, w, c) in &acc {
            for a in 0..=n {
                let b = n - a;
                let split_sign = match side {
                    Side::E => 1i64,
                    Side::F => -1,
                };
                let mut coeff = &*c * &ctx.params().xi_pow(split_sign * (a as i64) * (b as i64));
                // Braiding: the first-leg factor X^(a) crosses the second
                // leg w.
                if a > 0 && !w.is_empty() {
                    let mut wt_x = vec![0i64; rank];
                    let (i, _) = l.root.support();
                    wt_x[i] = a as i64;
                    let wt_w = word_weight(rank, w);
                    let braid = match side {
                        Side::E => weight_pairing(ctx, &wt_w, &wt_x),
                        Side::F => -weight_pairing(ctx, &wt_x, &wt_w),
                    };
                    coeff = &coeff * &ctx.params().xi_pow(braid);
                }
                let mut new_u = u.clone();
                if a > 0 {
                    match append_letter(ctx, &new_u, Letter { root: l.root, exp: a }, &coeff)? {
                        Some((nu, nc)) => {
                            new_u = nu;
                            coeff = nc;
                        }
                        None => continue,
                    }
                }
                let mut new_w = w.clone();
                if b > 0 {
                    match append_letter(ctx, &new_w, Letter { root: l.root, exp: b }, &coeff)? {
                        Some((nw, nc)) => {
                            new_w = nw;
                            coeff = nc;
                        }
                        None => continue,
                    }
                }
                next.push((new_u, new_w, coeff));
            }
        }
        acc = next;
    }
    Ok(acc.into_iter().filter(|(_, _, c)| !c.is_zero()).collect())
}

/// Braided three-leg coproduct, `(Delta (x) id) Delta`.
pub fn braided_delta3(
    ctx: &UqContext,
    word: &Word,
    side: Side,
) -> Result<Vec<(Word, Word, Word, CycNum)>> {
    let mut out = Vec::new();
    for (u, w, c) in braided_delta2(ctx, word, side)? {
        for (u1, u2, c2) in braided_delta2(ctx, &u, side)? {
            out.push((u1, u2, w.clone(), &c * &c2));
        }
    }
    Ok(out)
}

/// Braided antipode on one side, defined by the antipode axiom
/// `m (S (x) id) Delta = unit . counit` and computed recursively on the
/// divided-power degree.
pub fn braided_antipode(ctx: &Arc<UqContext>, word: &Word, side: Side) -> Result<UElem> {
    if word.iter().any(|l| matches!(l.root, Root::Pair(_, _))) {
        let mut out = UElem::zero(ctx);
        for (w, c) in expand_word(ctx, word, side)? {
            out = out.add(&braided_antipode(ctx, &w, side)?.scalar_mul(&c));
        }
        return Ok(out);
    }
    if word.is_empty() {
        return Ok(UElem::one(ctx));
    }
    let mut sum = UElem::zero(ctx);
    for (u, w, c) in braided_delta2(ctx, word, side)? {
        if u.is_empty() && w == *word {
            // The (1 (x) word) leg contributes S(1) word = word.
            sum = sum.add(&word_sum_to_elem(ctx, &vec![(w, c)], side)?);
            continue;
        }
        if u == *word {
            // The (word (x) 1) leg carries the unknown S(word); skip here.
            continue;
        }
        let s_u = braided_antipode(ctx, &u, side)?;
        let w_elem = word_sum_to_elem(ctx, &vec![(w, c)], side)?;
        sum = sum.add(&s_u.multiply(&w_elem)?);
    }
    Ok(sum.neg())
}

// ---------------------------------------------------------------------------
// The datum: generator tables and recursive extension
// ---------------------------------------------------------------------------

/// The memoized action/pairing tables of the datum.
pub struct TdDatum {
    ctx: Arc<UqContext>,
    left: Mutex<HashMap<(Word, Word), UElem>>,
    right: Mutex<HashMap<(Word, Word), UElem>>,
    sharp: Mutex<HashMap<(Word, Word), SpecTorusElem>>,
}

/// Scalar-or-letter outcome of a generator-table entry.
struct TableValue {
    coeff: CycNum,
    letter: Option<Letter>,
}

impl TdDatum {
    pub fn new(ctx: &Arc<UqContext>) -> Self {
        TdDatum {
            ctx: Arc::clone(ctx),
            left: Mutex::new(HashMap::new()),
            right: Mutex::new(HashMap::new()),
            sharp: Mutex::new(HashMap::new()),
        }
    }

    pub fn ctx(&self) -> &Arc<UqContext> {
        &self.ctx
    }

    /// `F_i^(n) ⇀ E_j^(m)` on bare exponents (either may be zero).
    fn table_left(&self, i: usize, n: u32, j: usize, m: u32) -> Result<TableValue> {
        let params = self.ctx.params();
        if n == 0 {
            return Ok(TableValue {
                coeff: params.one(),
                letter: (m > 0).then_some(Letter { root: Root::Simple(j), exp: m }),
            });
        }
        if m == 0 || i != j {
            return Ok(TableValue { coeff: params.zero(), letter: None });
        }
        let binom = self.ctx.qbinom_xi(m as i64 - 1, n as i64)?;
        if binom.is_zero() {
            return Ok(TableValue { coeff: binom, letter: None });
        }
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let coeff = &binom * &params.from_int(sign);
        Ok(TableValue {
            coeff,
            letter: (m > n).then(|| Letter { root: Root::Simple(i), exp: m - n }),
        })
    }

    /// `F_i^(n) ↼ E_j^(m)` on bare exponents.
    fn table_right(&self, i: usize, n: u32, j: usize, m: u32) -> Result<TableValue> {
        let params = self.ctx.params();
        if m == 0 {
            return Ok(TableValue {
                coeff: params.one(),
                letter: (n > 0).then_some(Letter { root: Root::Simple(i), exp: n }),
            });
        }
        if n == 0 || i != j {
            return Ok(TableValue { coeff: params.zero(), letter: None });
        }
        let binom = self.ctx.qbinom_xi(n as i64 - 1, m as i64)?;
        if binom.is_zero() {
            return Ok(TableValue { coeff: binom, letter: None });
        }
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let coeff = &binom * &params.from_int(sign);
        Ok(TableValue {
            coeff,
            letter: (n > m).then(|| Letter { root: Root::Simple(i), exp: n - m }),
        })
    }

    /// `F_i^(n) ♯ E_j^(m)` on bare exponents.
    fn table_sharp(&self, i: usize, n: u32, j: usize, m: u32) -> Result<SpecTorusElem> {
        let params = self.ctx.params();
        if n == 0 && m == 0 {
            return Ok(SpecTorusElem::one(&self.ctx.spec));
        }
        if n == 0 || m == 0 || n != m || i != j {
            return Ok(SpecTorusElem::zero(&self.ctx.spec));
        }
        let _ = params;
        self.ctx.spec_kbin_inv(i, 0, n as i64)
    }

    /// The action `⇀` on simple-letter words, extended recursively.
    pub fn harpoon_left(&self, b: &Word, a: &Word) -> Result<UElem> {
        if let Some(v) = self.left.lock().unwrap().get(&(b.clone(), a.clone())) {
            return Ok(v.clone());
        }
        let ctx = &self.ctx;
        let value = if b.is_empty() {
            UElem::from_e_word(ctx, a.clone())?
        } else if b.len() > 1 {
            // (b0 . rest) ⇀ a = b0 ⇀ (rest ⇀ a).
            let inner = self.harpoon_left(&b[1..].to_vec(), a)?;
            self.harpoon_left_on_elem(&b[..1].to_vec(), &inner)?
        } else if a.is_empty() {
            // b ⇀ 1 = eps(b) = 0 for a positive divided power.
            UElem::zero(ctx)
        } else if a.len() == 1 {
            let Root::Simple(i) = b[0].root else { unreachable!("expanded words") };
            let Root::Simple(j) = a[0].root else { unreachable!("expanded words") };
            let tv = self.table_left(i, b[0].exp, j, a[0].exp)?;
            match tv.letter {
                Some(l) => UElem::from_e_word(ctx, vec![l])?.scalar_mul(&tv.coeff),
                None => UElem::scalar(ctx, tv.coeff),
            }
        } else {
            // b ⇀ (a0 . rest) through the action-multiplication axiom.
            let Root::Simple(i) = b[0].root else { unreachable!() };
            let Root::Simple(j) = a[0].root else { unreachable!() };
            let nn = b[0].exp;
            let mm = a[0].exp;
            let rest = a[1..].to_vec();
            let mut out = UElem::zero(ctx);
            for (n1, n2, n3, bc) in three_compositions(ctx, nn, Side::F)? {
                for (m1, m2, m3, ac) in three_compositions(ctx, mm, Side::E)? {
                    if n2 != m2 {
                        continue;
                    }
                    let head = self.table_left(i, n1, j, m1)?;
                    if head.coeff.is_zero() {
                        continue;
                    }
                    let sharp_mid = self.table_sharp(i, n2, j, m2)?;
                    if sharp_mid.is_zero() {
                        continue;
                    }
                    let tail = self.table_right(i, n3, j, m3)?;
                    if tail.coeff.is_zero() {
                        continue;
                    }
                    // Torus factor K_i^(-n1) (sharp) K_j^(m3).
                    let torus = SpecTorusElem::g_pow(&ctx.spec, i, -(n1 as i64))
                        .mul(&sharp_mid)
                        .mul(&SpecTorusElem::g_pow(&ctx.spec, j, m3 as i64));
                    // (tail ⇀ rest), acted on by the torus factor.
                    let tail_word: Word = tail.letter.into_iter().collect();
                    let inner = self.harpoon_left(&tail_word, &rest)?;
                    let acted = act_left(ctx, &torus, &inner)?;
                    // Left-multiply by the head letter.
                    let head_elem = match head.letter {
                        Some(l) => UElem::from_e_word(ctx, vec![l])?,
                        None => UElem::one(ctx),
                    };
                    let term = head_elem
                        .multiply(&acted)?
                        .scalar_mul(&(&(&bc * &ac) * &(&head.coeff * &tail.coeff)));
                    out = out.add(&term);
                }
            }
            out
        };
        self.left.lock().unwrap().insert((b.clone(), a.clone()), value.clone());
        Ok(value)
    }

    /// Apply `b ⇀ .` to a normal-form E-side element.
    pub fn harpoon_left_on_elem(&self, b: &Word, x: &UElem) -> Result<UElem> {
        let sum = elem_to_word_sum(&self.ctx, x, Side::E)?;
        let mut out = UElem::zero(&self.ctx);
        for (w, c) in sum {
            out = out.add(&self.harpoon_left(b, &w)?.scalar_mul(&c));
        }
        Ok(out)
    }

    /// The action `↼` on simple-letter words, extended recursively.
    pub fn harpoon_right(&self, b: &Word, a: &Word) -> Result<UElem> {
        if let Some(v) = self.right.lock().unwrap().get(&(b.clone(), a.clone())) {
            return Ok(v.clone());
        }
        let ctx = &self.ctx;
        let value = if a.is_empty() {
            UElem::from_f_word(ctx, b.clone())?
        } else if a.len() > 1 {
            // b ↼ (a0 . rest) = (b ↼ a0) ↼ rest.
            let inner = self.harpoon_right(b, &a[..1].to_vec())?;
            self.harpoon_right_on_elem(&inner, &a[1..].to_vec())?
        } else if b.is_empty() {
            UElem::zero(ctx)
        } else if b.len() == 1 {
            let Root::Simple(i) = b[0].root else { unreachable!() };
            let Root::Simple(j) = a[0].root else { unreachable!() };
            let tv = self.table_right(i, b[0].exp, j, a[0].exp)?;
            match tv.letter {
                Some(l) => UElem::from_f_word(ctx, vec![l])?.scalar_mul(&tv.coeff),
                None => UElem::scalar(ctx, tv.coeff),
            }
        } else {
            // (b' . d) ↼ a with d the last letter of b.
            let d = *b.last().unwrap();
            let bp = b[..b.len() - 1].to_vec();
            let Root::Simple(i) = d.root else { unreachable!() };
            let Root::Simple(j) = a[0].root else { unreachable!() };
            let nn = d.exp;
            let mm = a[0].exp;
            let mut out = UElem::zero(ctx);
            for (n1, n2, n3, dc) in three_compositions(ctx, nn, Side::F)? {
                for (m1, m2, m3, ac) in three_compositions(ctx, mm, Side::E)? {
                    if n2 != m2 {
                        continue;
                    }
                    let head = self.table_left(i, n1, j, m1)?;
                    if head.coeff.is_zero() {
                        continue;
                    }
                    let sharp_mid = self.table_sharp(i, n2, j, m2)?;
                    if sharp_mid.is_zero() {
                        continue;
                    }
                    let tail = self.table_right(i, n3, j, m3)?;
                    if tail.coeff.is_zero() {
                        continue;
                    }
                    // b' ↼ (head letter), then act with
                    // K_i^(-n1) (sharp) K_j^(m3) on the right, then multiply
                    // by the tail value.
                    let head_word: Word = head.letter.into_iter().collect();
                    let inner = self.harpoon_right(&bp, &head_word)?;
                    let torus = SpecTorusElem::g_pow(&ctx.spec, i, -(n1 as i64))
                        .mul(&sharp_mid)
                        .mul(&SpecTorusElem::g_pow(&ctx.spec, j, m3 as i64));
                    let acted = act_right(ctx, &inner, &torus)?;
                    let tail_elem = match tail.letter {
                        Some(l) => UElem::from_f_word(ctx, vec![l])?,
                        None => UElem::one(ctx),
                    };
                    let term = acted
                        .multiply(&tail_elem)?
                        .scalar_mul(&(&(&dc * &ac) * &(&head.coeff * &tail.coeff)));
                    out = out.add(&term);
                }
            }
            out
        };
        self.right.lock().unwrap().insert((b.clone(), a.clone()), value.clone());
        Ok(value)
    }

    /// Apply `. ↼ a` to a normal-form F-side element.
    pub fn harpoon_right_on_elem(&self, x: &UElem, a: &Word) -> Result<UElem> {
        let sum = elem_to_word_sum(&self.ctx, x, Side::F)?;
        let mut out = UElem::zero(&self.ctx);
        for (w, c) in sum {
            out = out.add(&self.harpoon_right(&w, a)?.scalar_mul(&c));
        }
        Ok(out)
    }

    /// The pairing `♯` on simple-letter words, extended recursively.
    pub fn sharp(&self, b: &Word, a: &Word) -> Result<SpecTorusElem> {
        if let Some(v) = self.sharp.lock().unwrap().get(&(b.clone(), a.clone())) {
            return Ok(v.clone());
        }
        let ctx = &self.ctx;
        let value = if b.is_empty() {
            if a.is_empty() {
                SpecTorusElem::one(&ctx.spec)
            } else {
                SpecTorusElem::zero(&ctx.spec)
            }
        } else if a.is_empty() {
            SpecTorusElem::zero(&ctx.spec)
        } else if b.len() == 1 && a.len() == 1 {
            let Root::Simple(i) = b[0].root else { unreachable!() };
            let Root::Simple(j) = a[0].root else { unreachable!() };
            self.table_sharp(i, b[0].exp, j, a[0].exp)?
        } else if a.len() == 1 {
            // (b' . d) ♯ a = (b' ♯ (d1 ⇀ a1)) d1_coaction (d2 ♯ a2).
            let d = *b.last().unwrap();
            let bp = b[..b.len() - 1].to_vec();
            let Root::Simple(i) = d.root else { unreachable!() };
            let Root::Simple(j) = a[0].root else { unreachable!() };
            let mut out = SpecTorusElem::zero(&ctx.spec);
            for (n1, n2, dc) in two_compositions(ctx, d.exp, Side::F)? {
                for (m1, m2, ac) in two_compositions(ctx, a[0].exp, Side::E)? {
                    let head = self.table_left(i, n1, j, m1)?;
                    if head.coeff.is_zero() {
                        continue;
                    }
                    let tail = self.table_sharp(i, n2, j, m2)?;
                    if tail.is_zero() {
                        continue;
                    }
                    let head_word: Word = head.letter.into_iter().collect();
                    let first = self.sharp(&bp, &head_word)?;
                    if first.is_zero() {
                        continue;
                    }
                    let term = first
                        .mul(&SpecTorusElem::g_pow(&ctx.spec, i, -(n1 as i64)))
                        .mul(&tail)
                        .scalar_mul(&(&(&dc * &ac) * &head.coeff));
                    out = out.add(&term);
                }
            }
            out
        } else {
            // b ♯ (a0 . rest) = (b1 ♯ a0_1) a0_2-coaction ((b2 ↼ a0_2) ♯ rest).
            let a0 = a[0];
            let rest = a[1..].to_vec();
            let Root::Simple(j) = a0.root else { unreachable!() };
            let mut out = SpecTorusElem::zero(&ctx.spec);
            for (b1, b2, bc) in braided_delta2(ctx, b, Side::F)? {
                for (m1, m2, ac) in two_compositions(ctx, a0.exp, Side::E)? {
                    let a1_word: Word =
                        (m1 > 0).then_some(Letter { root: Root::Simple(j), exp: m1 }).into_iter().collect();
                    let first = self.sharp(&b1, &a1_word)?;
                    if first.is_zero() {
                        continue;
                    }
                    let a2_word: Word =
                        (m2 > 0).then_some(Letter { root: Root::Simple(j), exp: m2 }).into_iter().collect();
                    let mid = self.harpoon_right(&b2, &a2_word)?;
                    let mid_sum = elem_to_word_sum(ctx, &mid, Side::F)?;
                    for (w, wc) in mid_sum {
                        let inner = self.sharp(&w, &rest)?;
                        if inner.is_zero() {
                            continue;
                        }
                        let term = first
                            .mul(&SpecTorusElem::g_pow(&ctx.spec, j, m2 as i64))
                            .mul(&inner)
                            .scalar_mul(&(&(&bc * &ac) * &wc));
                        out = out.add(&term);
                    }
                }
            }
            out
        };
        self.sharp.lock().unwrap().insert((b.clone(), a.clone()), value.clone());
        Ok(value)
    }

    /// `⇀` on arbitrary normal-form elements of the two sides (composites
    /// expanded first, both arguments extended bilinearly).
    pub fn harpoon_left_elem(&self, b: &UElem, a: &UElem) -> Result<UElem> {
        let bs = elem_to_word_sum(&self.ctx, b, Side::F)?;
        let asum = elem_to_word_sum(&self.ctx, a, Side::E)?;
        let mut out = UElem::zero(&self.ctx);
        for (bw, bc) in &bs {
            for (aw, ac) in &asum {
                out = out.add(&self.harpoon_left(bw, aw)?.scalar_mul(&(bc * ac)));
            }
        }
        Ok(out)
    }

    pub fn harpoon_right_elem(&self, b: &UElem, a: &UElem) -> Result<UElem> {
        let bs = elem_to_word_sum(&self.ctx, b, Side::F)?;
        let asum = elem_to_word_sum(&self.ctx, a, Side::E)?;
        let mut out = UElem::zero(&self.ctx);
        for (bw, bc) in &bs {
            for (aw, ac) in &asum {
                out = out.add(&self.harpoon_right(bw, aw)?.scalar_mul(&(bc * ac)));
            }
        }
        Ok(out)
    }

    pub fn sharp_elem(&self, b: &UElem, a: &UElem) -> Result<SpecTorusElem> {
        let bs = elem_to_word_sum(&self.ctx, b, Side::F)?;
        let asum = elem_to_word_sum(&self.ctx, a, Side::E)?;
        let mut out = SpecTorusElem::zero(&self.ctx.spec);
        for (bw, bc) in &bs {
            for (aw, ac) in &asum {
                out = out.add(&self.sharp(bw, aw)?.scalar_mul(&(bc * ac)));
            }
        }
        Ok(out)
    }
}

/// Two-leg splittings of a divided power with the braided-coproduct
/// coefficients `xi^(+-ab)`.
fn two_compositions(ctx: &UqContext, n: u32, side: Side) -> Result<Vec<(u32, u32, CycNum)>> {
    let sign = match side {
        Side::E => 1i64,
        Side::F => -1,
    };
    let mut out = Vec::new();
    for a in 0..=n {
        let b = n - a;
        out.push((a, b, ctx.params().xi_pow(sign * a as i64 * b as i64)));
    }
    Ok(out)
}

/// Three-leg splittings with coefficients `xi^(+-(ab+ac+bc))`.
fn three_compositions(ctx: &UqContext, n: u32, side: Side) -> Result<Vec<(u32, u32, u32, CycNum)>> {
    let sign = match side {
        Side::E => 1i64,
        Side::F => -1,
    };
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=(n - a) {
            let c = n - a - b;
            let mixed = (a * b + a * c + b * c) as i64;
            out.push((a, b, c, ctx.params().xi_pow(sign * mixed)));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Reconstruction of the Hopf structure from the datum
// ---------------------------------------------------------------------------

/// Sweedler legs of a torus monomial (`g` group-like, `t` primitive).
fn torus_mono_legs(
    ctx: &Arc<UqContext>,
    m: &SpecTorusMonomial,
) -> Vec<(SpecTorusMonomial, SpecTorusMonomial, CycNum)> {
    let x = SpecTorusElem::monomial(&ctx.spec, m.clone(), ctx.params().one());
    let d = x.comult();
    let r = ctx.rank();
    d.terms()
        .map(|(dm, c)| {
            (
                SpecTorusMonomial { g: dm.g[..r].to_vec(), t: dm.t[..r].to_vec() },
                SpecTorusMonomial { g: dm.g[r..].to_vec(), t: dm.t[r..].to_vec() },
                c.clone(),
            )
        })
        .collect()
}

/// The product of two triangular monomials `(a, h, b) . (c, k, d)` computed
/// purely from the datum (actions, pairing, coactions), never through the
/// straightening engine:
///
/// `a (h_1 |> (b1_0 ⇀ c1)) (x) h_2 b1_1 (b2 ♯ c2) c3_(-1) k_1 (x)
///  ((b3 ↼ c3_0) <| k_2) d`.
pub fn reconstruct_product(
    td: &TdDatum,
    x: (&Word, &SpecTorusMonomial, &Word),
    y: (&Word, &SpecTorusMonomial, &Word),
) -> Result<UElem> {
    let ctx = td.ctx();
    let (a_word, h, b_word) = x;
    let (c_word, k, d_word) = y;
    let a_elem = UElem::from_e_word(ctx, a_word.clone())?;
    let d_elem = UElem::from_f_word(ctx, d_word.clone())?;
    let mut out = UElem::zero(ctx);
    for (b1, b2, b3, bc) in braided_delta3(ctx, b_word, Side::F)? {
        for (c1, c2, c3, cc) in braided_delta3(ctx, c_word, Side::E)? {
            let acted = td.harpoon_left(&b1, &c1)?;
            if acted.is_zero() {
                continue;
            }
            let pair_mid = td.sharp(&b2, &c2)?;
            if pair_mid.is_zero() {
                continue;
            }
            let moved = td.harpoon_right(&b3, &c3)?;
            if moved.is_zero() {
                continue;
            }
            let b1_coact = coaction_minus(ctx, &b1);
            let c3_coact = coaction_plus(ctx, &c3);
            for (h1, h2, hc) in torus_mono_legs(ctx, h) {
                for (k1, k2, kc) in torus_mono_legs(ctx, k) {
                    // Plus part: a (h1 |> (b1 ⇀ c1)).
                    let h1_elem =
                        SpecTorusElem::monomial(&ctx.spec, h1.clone(), ctx.params().one());
                    let plus = a_elem.multiply(&act_left(ctx, &h1_elem, &acted)?)?;
                    if plus.is_zero() {
                        continue;
                    }
                    // Torus part: h2 b1_1 (b2 ♯ c2) c3_(-1) k1.
                    let torus = SpecTorusElem::monomial(&ctx.spec, h2.clone(), ctx.params().one())
                        .mul(&SpecTorusElem::monomial(
                            &ctx.spec,
                            b1_coact.clone(),
                            ctx.params().one(),
                        ))
                        .mul(&pair_mid)
                        .mul(&SpecTorusElem::monomial(
                            &ctx.spec,
                            c3_coact.clone(),
                            ctx.params().one(),
                        ))
                        .mul(&SpecTorusElem::monomial(&ctx.spec, k1.clone(), ctx.params().one()));
                    // Minus part: ((b3 ↼ c3) <| k2) d.
                    let k2_elem =
                        SpecTorusElem::monomial(&ctx.spec, k2.clone(), ctx.params().one());
                    let minus = act_right(ctx, &moved, &k2_elem)?.multiply(&d_elem)?;
                    if minus.is_zero() {
                        continue;
                    }
                    let term = plus
                        .multiply(&UElem::from_torus(ctx, &torus))?
                        .multiply(&minus)?
                        .scalar_mul(&(&(&bc * &cc) * &(&hc * &kc)));
                    out = out.add(&term);
                }
            }
        }
    }
    Ok(out)
}

/// The coproduct of a triangular monomial computed from the datum:
/// `Delta(a (x) h (x) b) = (a1 (x) a2_(-1) h_1 (x) b1_0)
///                     (x) (a2_0 (x) h_2 b1_1 (x) b2)`.
pub fn reconstruct_coproduct(
    td: &TdDatum,
    x: (&Word, &SpecTorusMonomial, &Word),
) -> Result<UTensor> {
    let ctx = td.ctx();
    let (a_word, h, b_word) = x;
    let mut out = UTensor::zero(ctx);
    for (a1, a2, acoef) in braided_delta2(ctx, a_word, Side::E)? {
        for (b1, b2, bcoef) in braided_delta2(ctx, b_word, Side::F)? {
            let a2_coact = coaction_plus(ctx, &a2);
            let b1_coact = coaction_minus(ctx, &b1);
            for (h1, h2, hc) in torus_mono_legs(ctx, h) {
                let left_torus = SpecTorusElem::monomial(&ctx.spec, a2_coact.clone(), ctx.params().one())
                    .mul(&SpecTorusElem::monomial(&ctx.spec, h1.clone(), ctx.params().one()));
                let right_torus = SpecTorusElem::monomial(&ctx.spec, h2.clone(), ctx.params().one())
                    .mul(&SpecTorusElem::monomial(&ctx.spec, b1_coact.clone(), ctx.params().one()));
                let left = UElem::from_e_word(ctx, a1.clone())?
                    .multiply(&UElem::from_torus(ctx, &left_torus))?
                    .multiply(&UElem::from_f_word(ctx, b1.clone())?)?;
                let right = UElem::from_e_word(ctx, a2.clone())?
                    .multiply(&UElem::from_torus(ctx, &right_torus))?
                    .multiply(&UElem::from_f_word(ctx, b2.clone())?)?;
                out = out.add(&UTensor::of(&left, &right).scalar_mul(&(&(&acoef * &bcoef) * &hc)));
            }
        }
    }
    Ok(out)
}

/// The antipode of a triangular monomial computed from the datum:
/// `S(a (x) h (x) b) = (1 (x) 1 (x) S_B(b_0)) (1 (x) S_H(a_(-1) h b_1) (x) 1)
///                     (S_A(a_0) (x) 1 (x) 1)`.
pub fn reconstruct_antipode(
    td: &TdDatum,
    x: (&Word, &SpecTorusMonomial, &Word),
) -> Result<UElem> {
    let ctx = td.ctx();
    let (a_word, h, b_word) = x;
    let a_coact = coaction_plus(ctx, a_word);
    let b_coact = coaction_minus(ctx, b_word);
    let mid = SpecTorusElem::monomial(&ctx.spec, a_coact, ctx.params().one())
        .mul(&SpecTorusElem::monomial(&ctx.spec, h.clone(), ctx.params().one()))
        .mul(&SpecTorusElem::monomial(&ctx.spec, b_coact, ctx.params().one()))
        .antipode();
    let sb = braided_antipode(ctx, b_word, Side::F)?;
    let sa = braided_antipode(ctx, a_word, Side::E)?;
    sb.multiply(&UElem::from_torus(ctx, &mid))?.multiply(&sa)
}

// ---------------------------------------------------------------------------
// Verification suites
// ---------------------------------------------------------------------------

/// A one-letter word on a simple root (convenience for tests and suites).
pub fn simple_letter(i: usize, n: u32) -> Word {
    vec![Letter { root: Root::Simple(i), exp: n }]
}

/// Check that the recursively extended datum agrees with the engine
/// projections on all normal-form monomial pairs up to a total degree:
/// `b ⇀ a = proj_plus(b a)`, `b ↼ a = proj_minus(b a)` and
/// `b ♯ a = proj_zero(b a)`.
pub fn verify_oracle_equivalence(
    ctx: &Arc<UqContext>,
    label: &str,
    total_degree: i64,
) -> Result<Vec<CheckResult>> {
    let td = TdDatum::new(ctx);
    let monomials = normal_words(ctx, total_degree);
    let mut pairs = 0usize;
    let mut first_failure: Option<String> = None;
    let mut ok = [true; 3];
    for b in &monomials {
        for a in &monomials {
            if crate::uq::word_degree(b) + crate::uq::word_degree(a) > total_degree {
                continue;
            }
            let b_elem = UElem::from_f_word(ctx, b.clone())?;
            let a_elem = UElem::from_e_word(ctx, a.clone())?;
            let product = b_elem.multiply(&a_elem)?;
            pairs += 1;

            let plus = td.harpoon_left_elem(&b_elem, &a_elem)?;
            if plus != product.project(Side::E) {
                ok[0] = false;
                first_failure.get_or_insert_with(|| {
                    format!("⇀ mismatch at b = {:?}, a = {:?}", b, a)
                });
            }
            let minus = td.harpoon_right_elem(&b_elem, &a_elem)?;
            if minus != product.project(Side::F) {
                ok[1] = false;
                first_failure.get_or_insert_with(|| {
                    format!("↼ mismatch at b = {:?}, a = {:?}", b, a)
                });
            }
            let zero = td.sharp_elem(&b_elem, &a_elem)?;
            if UElem::from_torus(ctx, &zero) != UElem::from_torus(ctx, &product.project_torus())
            {
                ok[2] = false;
                first_failure.get_or_insert_with(|| {
                    format!("♯ mismatch at b = {:?}, a = {:?}", b, a)
                });
            }
        }
    }
    let names = ["left-action", "right-action", "pairing"];
    Ok((0..3)
        .map(|p| {
            CheckResult::from_bool(
                format!("td.oracle.{}.{}.deg{}", names[p], label, total_degree),
                "datum recursion matches engine projection",
                ok[p],
                || {
                    format!(
                        "{} ({} pairs)",
                        first_failure.clone().unwrap_or_default(),
                        pairs
                    )
                },
            )
            .tap_pass_witness(format!("{} pairs", pairs))
        })
        .collect())
}

/// Normal-form words of bounded total degree for the engine's Cartan data
/// (letters in strictly descending canonical order).
pub fn normal_words(ctx: &Arc<UqContext>, max_degree: i64) -> Vec<Word> {
    let rank = ctx.rank();
    let mut letters: Vec<Root> = Vec::new();
    for i in 0..rank {
        letters.push(Root::Simple(i));
        for j in (i + 1)..rank {
            if ctx.cartan.entry(i, j) == -1 {
                letters.push(Root::Pair(i, j));
            }
        }
    }
    letters.sort_by(|a, b| b.order_key().cmp(&a.order_key()));
    let mut words: Vec<Word> = vec![Vec::new()];
    for root in letters {
        let mut next = Vec::new();
        for w in &words {
            let used: i64 = crate::uq::word_degree(w);
            next.push(w.clone());
            let mut e = 1u32;
            while used + root.degree() * e as i64 <= max_degree {
                let mut nw = w.clone();
                nw.push(Letter { root, exp: e });
                next.push(nw);
                e += 1;
            }
        }
        words = next;
    }
    words
}

trait TapPass {
    fn tap_pass_witness(self, w: String) -> Self;
}

impl TapPass for CheckResult {
    fn tap_pass_witness(mut self, w: String) -> Self {
        if self.passed() && self.witness.is_none() {
            self.witness = Some(w);
        }
        self
    }
}

/// Compare the reconstructed product against the engine product on seeded
/// random normal-form triples.
pub fn verify_reconstruction(
    ctx: &Arc<UqContext>,
    label: &str,
    samples: usize,
    max_degree: i64,
    seed: u64,
) -> Result<Vec<CheckResult>> {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let td = TdDatum::new(ctx);
    let mut rng = StdRng::seed_from_u64(seed);
    let words = normal_words(ctx, max_degree);
    let simple_words: Vec<Word> = words
        .iter()
        .filter(|w| w.iter().all(|l| matches!(l.root, Root::Simple(_))))
        .cloned()
        .collect();
    let rank = ctx.rank();
    let two_ell = 2 * ctx.ell();
    let random_mono = |rng: &mut StdRng| -> SpecTorusMonomial {
        SpecTorusMonomial {
            g: (0..rank).map(|_| rng.gen_range(0..two_ell) as u32).collect(),
            t: (0..rank).map(|_| rng.gen_range(0..2) as u32).collect(),
        }
    };
    let mut mismatches = 0usize;
    let mut witness = None;
    for case in 0..samples {
        let a = simple_words[rng.gen_range(0..simple_words.len())].clone();
        let b = simple_words[rng.gen_range(0..simple_words.len())].clone();
        let c = simple_words[rng.gen_range(0..simple_words.len())].clone();
        let d = simple_words[rng.gen_range(0..simple_words.len())].clone();
        let h = random_mono(&mut rng);
        let k = random_mono(&mut rng);

        let lhs = reconstruct_product(&td, (&a, &h, &b), (&c, &k, &d))?;
        let x = UElem::from_e_word(ctx, a.clone())?
            .multiply(&UElem::from_torus(
                ctx,
                &SpecTorusElem::monomial(&ctx.spec, h.clone(), ctx.params().one()),
            ))?
            .multiply(&UElem::from_f_word(ctx, b.clone())?)?;
        let y = UElem::from_e_word(ctx, c.clone())?
            .multiply(&UElem::from_torus(
                ctx,
                &SpecTorusElem::monomial(&ctx.spec, k.clone(), ctx.params().one()),
            ))?
            .multiply(&UElem::from_f_word(ctx, d.clone())?)?;
        let rhs = x.multiply(&y)?;
        if lhs != rhs {
            mismatches += 1;
            witness.get_or_insert_with(|| {
                format!("case {}: ({:?},{:?},{:?}) . ({:?},{:?},{:?})", case, a, h, b, c, k, d)
            });
        }
    }
    Ok(vec![CheckResult::from_bool(
        format!("td.reconstruct-product.{}.n{}", label, samples),
        "datum reconstruction agrees with the engine product",
        mismatches == 0,
        || format!("{} mismatches; first {}", mismatches, witness.unwrap_or_default()),
    )
    .tap_pass_witness(format!("{} random triples, seed {}", samples, seed))])
}

/// Compare the reconstructed coproduct against the engine coproduct on all
/// generator monomials up to a degree bound, and check the antipode formula
/// against the Hopf antipode axiom.
pub fn verify_reconstruction_coalgebra(
    ctx: &Arc<UqContext>,
    label: &str,
    max_degree: i64,
) -> Result<Vec<CheckResult>> {
    let td = TdDatum::new(ctx);
    let words = normal_words(ctx, max_degree);
    let simple_words: Vec<Word> = words
        .iter()
        .filter(|w| w.iter().all(|l| matches!(l.root, Root::Simple(_))))
        .cloned()
        .collect();
    let mut cop_ok = true;
    let mut anti_ok = true;
    let mut witness = None;
    for a in simple_words.iter().take(12) {
        for b in simple_words.iter().take(12) {
            let h = SpecTorusMonomial::unit(ctx.rank());
            let x = UElem::from_e_word(ctx, a.clone())?
                .multiply(&UElem::from_f_word(ctx, b.clone())?)?;
            // The engine coproduct of the product a.b versus the
            // reconstruction on the triple (a, 1, b): the triple maps to the
            // element a.b by multiplication.
            let recon = reconstruct_coproduct(&td, (a, &h, b))?;
            let engine = comultiply(&x)?;
            if recon != engine {
                cop_ok = false;
                witness.get_or_insert_with(|| format!("coproduct at ({:?}, {:?})", a, b));
            }
            // Antipode axiom m (S (x) id) Delta = eta . eps through the
            // reconstructed antipode.
            let d = comultiply(&x)?;
            let mut acc = UElem::zero(ctx);
            for ((t1, t2), c) in d.terms() {
                let s1 = reconstruct_antipode(&td, (&t1.e, &t1.torus, &t1.f))?;
                let rest = UElem::from_triple(ctx, t2.clone(), c.clone());
                acc = acc.add(&s1.multiply(&rest)?);
            }
            if acc != UElem::scalar(ctx, x.counit()) {
                anti_ok = false;
                witness.get_or_insert_with(|| format!("antipode at ({:?}, {:?})", a, b));
            }
        }
    }
    Ok(vec![
        CheckResult::from_bool(
            format!("td.reconstruct-coproduct.{}", label),
            "datum coproduct agrees with the engine coproduct",
            cop_ok,
            || witness.clone().unwrap_or_default(),
        ),
        CheckResult::from_bool(
            format!("td.reconstruct-antipode.{}", label),
            "reconstructed antipode satisfies the antipode axiom",
            anti_ok,
            || witness.clone().unwrap_or_default(),
        ),
    ])
}


/// Sweep the defining identities of the datum over all generator tuples
/// with divided powers up to `bound`: module axioms of the two actions,
/// their compatibility with the comultiplications and with each other, the
/// structure-compatibility of the pairing, and the product-compatibility
/// identities. One aggregated result is reported per axiom.
pub fn verify_td_axioms(ctx: &Arc<UqContext>, label: &str, bound: u32) -> Result<Vec<CheckResult>> {
    let td = TdDatum::new(ctx);
    let rank = ctx.rank();
    let params = ctx.params();

    struct Tally {
        id: &'static str,
        rule: &'static str,
        instances: usize,
        failure: Option<String>,
    }
    impl Tally {
        fn new(id: &'static str, rule: &'static str) -> Self {
            Tally { id, rule, instances: 0, failure: None }
        }
        fn record(&mut self, ok: bool, detail: impl Fn() -> String) {
            self.instances += 1;
            if !ok && self.failure.is_none() {
                self.failure = Some(detail());
            }
        }
        fn finish(self, label: &str, bound: u32) -> CheckResult {
            CheckResult::from_bool(
                format!("td.ax.{}.{}.b{}", self.id, label, bound),
                self.rule,
                self.failure.is_none(),
                || self.failure.clone().unwrap_or_default(),
            )
            .tap_pass_witness(format!("{} instances", self.instances))
        }
    }

    let mut t_action_left = Tally::new("action-module-left", "left action twisted by the torus");
    let mut t_unit_left = Tally::new("unit-left", "action on the unit is the counit");
    let mut t_comult_left = Tally::new("comult-left-action", "comultiplication of a left-action value");
    let mut t_action_right = Tally::new("action-module-right", "right action twisted by the torus");
    let mut t_unit_right = Tally::new("unit-right", "unit acted on is the counit");
    let mut t_comult_right = Tally::new("comult-right-action", "comultiplication of a right-action value");
    let mut t_mixed = Tally::new("mixed-action-compat", "the two actions braid past each other");
    let mut t_sharp_h = Tally::new("sharp-torus-compat", "pairing twisted by the torus");
    let mut t_sharp_comult = Tally::new("sharp-comult", "comultiplication of a pairing value");
    let mut t_sharp_counit = Tally::new("sharp-counit", "counit of a pairing value");
    let mut t_sharp_right = Tally::new("sharp-product-right", "pairing against a product");
    let mut t_sharp_left = Tally::new("sharp-product-left", "pairing of a product");
    let mut t_sharp_units = Tally::new("sharp-units", "pairing against the units");
    let mut t_act_product = Tally::new("left-action-product", "left action on a product");
    let mut t_ract_product = Tally::new("right-action-product", "right action of a product");
    let mut t_coact_plus = Tally::new("coaction-compat-plus", "coaction of a left-action value");
    let mut t_coact_minus = Tally::new("coaction-compat-minus", "coaction of a right-action value");

    let torus_mono = |m: &SpecTorusMonomial| SpecTorusElem::monomial(&ctx.spec, m.clone(), params.one());
    let g_mono = |wt: &SpecTorusMonomial| torus_mono(wt);
    let _ = g_mono;
    // The torus generators used as `h`: each group generator and each
    // primitive generator.
    let mut h_gens: Vec<SpecTorusMonomial> = Vec::new();
    for u in 0..rank {
        let mut g = SpecTorusMonomial::unit(rank);
        g.g[u] = 1;
        h_gens.push(g);
        let mut t = SpecTorusMonomial::unit(rank);
        t.t[u] = 1;
        h_gens.push(t);
    }

    // Braided Delta_A of a V+ element, as a UTensor.
    let delta_a = |x: &UElem| -> Result<UTensor> {
        let mut out = UTensor::zero(ctx);
        for (w, c) in elem_to_word_sum(ctx, x, Side::E)? {
            for (u, v, lc) in braided_delta2(ctx, &w, Side::E)? {
                let left = UElem::from_e_word(ctx, u)?;
                let right = UElem::from_e_word(ctx, v)?;
                out = out.add(&UTensor::of(&left, &right).scalar_mul(&(&c * &lc)));
            }
        }
        Ok(out)
    };
    let delta_b = |x: &UElem| -> Result<UTensor> {
        let mut out = UTensor::zero(ctx);
        for (w, c) in elem_to_word_sum(ctx, x, Side::F)? {
            for (u, v, lc) in braided_delta2(ctx, &w, Side::F)? {
                let left = UElem::from_f_word(ctx, u)?;
                let right = UElem::from_f_word(ctx, v)?;
                out = out.add(&UTensor::of(&left, &right).scalar_mul(&(&c * &lc)));
            }
        }
        Ok(out)
    };
    // lambda-coaction legs of a V+ element: (torus monomial, word term).
    let lambda_legs = |x: &UElem| -> Result<Vec<(SpecTorusElem, UElem, CycNum)>> {
        let mut out = Vec::new();
        for (w, c) in elem_to_word_sum(ctx, x, Side::E)? {
            let m = coaction_plus(ctx, &w);
            out.push((torus_mono(&m), UElem::from_e_word(ctx, w)?, c));
        }
        Ok(out)
    };
    let rho_legs = |x: &UElem| -> Result<Vec<(UElem, SpecTorusElem, CycNum)>> {
        let mut out = Vec::new();
        for (w, c) in elem_to_word_sum(ctx, x, Side::F)? {
            let m = coaction_minus(ctx, &w);
            out.push((UElem::from_f_word(ctx, w)?, torus_mono(&m), c));
        }
        Ok(out)
    };

    for i in 0..rank {
        for n in 1..=bound {
            let b_word = simple_letter(i, n);
            let b_elem = UElem::from_f_word(ctx, b_word.clone())?;

            // b ⇀ 1 = eps(b), 1 ↼ a = eps(a), b ♯ 1 and 1 ♯ a.
            let v = td.harpoon_left(&b_word, &Vec::new())?;
            t_unit_left.record(v.is_zero(), || format!("b = F[{};{}]", i + 1, n));
            let s = td.sharp(&b_word, &Vec::new())?;
            t_sharp_units.record(s.is_zero(), || format!("b = F[{};{}]", i + 1, n));
            let v = td.harpoon_right(&Vec::new(), &simple_letter(i, n))?;
            t_unit_right.record(v.is_zero(), || format!("a = E[{};{}]", i + 1, n));
            let s = td.sharp(&Vec::new(), &simple_letter(i, n))?;
            t_sharp_units.record(s.is_zero(), || format!("a = E[{};{}]", i + 1, n));

            for j in 0..rank {
                for m in 1..=bound {
                    let a_word = simple_letter(j, m);
                    let a_elem = UElem::from_e_word(ctx, a_word.clone())?;

                    // Axioms involving a torus generator h.
                    for h in &h_gens {
                        let h_elem = torus_mono(h);
                        let legs = torus_mono_legs(ctx, h);

                        // b ⇀ (h |> a) = h1 |> ((b <| h2) ⇀ a).
                        let lhs =
                            td.harpoon_left_on_elem(&b_word, &act_left(ctx, &h_elem, &a_elem)?)?;
                        let mut rhs = UElem::zero(ctx);
                        for (h1, h2, hc) in &legs {
                            let b_acted = act_right(ctx, &b_elem, &torus_mono(h2))?;
                            let mut inner = UElem::zero(ctx);
                            for (bw, bc) in elem_to_word_sum(ctx, &b_acted, Side::F)? {
                                inner = inner.add(&td.harpoon_left(&bw, &a_word)?.scalar_mul(&bc));
                            }
                            rhs = rhs.add(&act_left(ctx, &torus_mono(h1), &inner)?.scalar_mul(hc));
                        }
                        t_action_left.record(lhs == rhs, || {
                            format!("b=F[{};{}], a=E[{};{}], h={:?}", i + 1, n, j + 1, m, h)
                        });

                        // (b <| h) ↼ a = (b ↼ (h1 |> a)) <| h2.
                        let lhs = {
                            let b_acted = act_right(ctx, &b_elem, &h_elem)?;
                            td.harpoon_right_on_elem(&b_acted, &a_word)?
                        };
                        let mut rhs = UElem::zero(ctx);
                        for (h1, h2, hc) in &legs {
                            let a_acted = act_left(ctx, &torus_mono(h1), &a_elem)?;
                            let mut inner = UElem::zero(ctx);
                            for (aw, ac) in elem_to_word_sum(ctx, &a_acted, Side::E)? {
                                inner = inner.add(&td.harpoon_right(&b_word, &aw)?.scalar_mul(&ac));
                            }
                            rhs = rhs.add(&act_right(ctx, &inner, &torus_mono(h2))?.scalar_mul(hc));
                        }
                        t_action_right.record(lhs == rhs, || {
                            format!("b=F[{};{}], a=E[{};{}], h={:?}", i + 1, n, j + 1, m, h)
                        });

                        // (b ♯ (h1 |> a)) h2 = h1 ((b <| h2) ♯ a).
                        let mut lhs = SpecTorusElem::zero(&ctx.spec);
                        let mut rhs = SpecTorusElem::zero(&ctx.spec);
                        for (h1, h2, hc) in &legs {
                            let a_acted = act_left(ctx, &torus_mono(h1), &a_elem)?;
                            let s = td.sharp_elem(&b_elem, &a_acted)?;
                            lhs = lhs.add(&s.mul(&torus_mono(h2)).scalar_mul(hc));
                            let b_acted = act_right(ctx, &b_elem, &torus_mono(h2))?;
                            let s2 = td.sharp_elem(&b_acted, &a_elem)?;
                            rhs = rhs.add(&torus_mono(h1).mul(&s2).scalar_mul(hc));
                        }
                        t_sharp_h.record(lhs == rhs, || {
                            format!("b=F[{};{}], a=E[{};{}], h={:?}", i + 1, n, j + 1, m, h)
                        });
                    }

                    // Delta_A(b ⇀ a) = (b1_0 ⇀ a1) (x) (b1_1 |> (b2 ⇀ a2)).
                    let lhs = delta_a(&td.harpoon_left(&b_word, &a_word)?)?;
                    let mut rhs = UTensor::zero(ctx);
                    for (b1, b2, bc) in braided_delta2(ctx, &b_word, Side::F)? {
                        for (a1, a2, ac) in braided_delta2(ctx, &a_word, Side::E)? {
                            let first = td.harpoon_left(&b1, &a1)?;
                            if first.is_zero() {
                                continue;
                            }
                            let b1_coact = torus_mono(&coaction_minus(ctx, &b1));
                            let second = act_left(ctx, &b1_coact, &td.harpoon_left(&b2, &a2)?)?;
                            rhs = rhs.add(&UTensor::of(&first, &second).scalar_mul(&(&bc * &ac)));
                        }
                    }
                    t_comult_left.record(lhs == rhs, || {
                        format!("b=F[{};{}], a=E[{};{}]", i + 1, n, j + 1, m)
                    });

                    // Delta_B(b ↼ a) = ((b1 ↼ a1) <| a2_(-1)) (x) (b2 ↼ a2_0).
                    let lhs = delta_b(&td.harpoon_right(&b_word, &a_word)?)?;
                    let mut rhs = UTensor::zero(ctx);
                    for (b1, b2, bc) in braided_delta2(ctx, &b_word, Side::F)? {
                        for (a1, a2, ac) in braided_delta2(ctx, &a_word, Side::E)? {
                            let a2_coact = torus_mono(&coaction_plus(ctx, &a2));
                            let first =
                                act_right(ctx, &td.harpoon_right(&b1, &a1)?, &a2_coact)?;
                            if first.is_zero() {
                                continue;
                            }
                            let second = td.harpoon_right(&b2, &a2)?;
                            rhs = rhs.add(&UTensor::of(&first, &second).scalar_mul(&(&bc * &ac)));
                        }
                    }
                    t_comult_right.record(lhs == rhs, || {
                        format!("b=F[{};{}], a=E[{};{}]", i + 1, n, j + 1, m)
                    });

                    // (b1 ⇀ a1) (x) (b2 ↼ a2)
                    //   = (b1_1 |> (b2 ⇀ a2_0)) (x) ((b1_0 ↼ a1) <| a2_(-1)).
                    let mut lhs = UTensor::zero(ctx);
                    let mut rhs = UTensor::zero(ctx);
                    for (b1, b2, bc) in braided_delta2(ctx, &b_word, Side::F)? {
                        for (a1, a2, ac) in braided_delta2(ctx, &a_word, Side::E)? {
                            let c = &bc * &ac;
                            let l1 = td.harpoon_left(&b1, &a1)?;
                            let l2 = td.harpoon_right(&b2, &a2)?;
                            lhs = lhs.add(&UTensor::of(&l1, &l2).scalar_mul(&c));
                            let b1_coact = torus_mono(&coaction_minus(ctx, &b1));
                            let a2_coact = torus_mono(&coaction_plus(ctx, &a2));
                            let r1 = act_left(ctx, &b1_coact, &td.harpoon_left(&b2, &a2)?)?;
                            let r2 = act_right(ctx, &td.harpoon_right(&b1, &a1)?, &a2_coact)?;
                            rhs = rhs.add(&UTensor::of(&r1, &r2).scalar_mul(&c));
                        }
                    }
                    t_mixed.record(lhs == rhs, || {
                        format!("b=F[{};{}], a=E[{};{}]", i + 1, n, j + 1, m)
                    });

                    // Delta_H(b ♯ a) = (b1_0 ♯ a1) a2_(-1) (x) b1_1 (b2 ♯ a2_0).
                    let lhs = td.sharp(&b_word, &a_word)?.comult();
                    let mut rhs_terms: Option<SpecTorusElem> = None;
                    for (b1, b2, bc) in braided_delta2(ctx, &b_word, Side::F)? {
                        for (a1, a2, ac) in braided_delta2(ctx, &a_word, Side::E)? {
                            let s1 = td.sharp(&b1, &a1)?;
                            if s1.is_zero() {
                                continue;
                            }
                            let s2 = td.sharp(&b2, &a2)?;
                            if s2.is_zero() {
                                continue;
                            }
                            let left = s1.mul(&torus_mono(&coaction_plus(ctx, &a2)));
                            let right = torus_mono(&coaction_minus(ctx, &b1)).mul(&s2);
                            let term = left.tensor(&right).scalar_mul(&(&bc * &ac));
                            rhs_terms = Some(match rhs_terms {
                                None => term,
                                Some(acc) => acc.add(&term),
                            });
                        }
                    }
                    let rhs = rhs_terms.unwrap_or_else(|| {
                        SpecTorusElem::zero(&crate::torus_special::SpecContext::new(
                            std::sync::Arc::clone(params),
                            2 * rank,
                        ))
                    });
                    t_sharp_comult.record(lhs == rhs, || {
                        format!("b=F[{};{}], a=E[{};{}]", i + 1, n, j + 1, m)
                    });

                    // eps_H(b ♯ a) = eps(b) eps(a) = 0 for positive powers.
                    let eps = td.sharp(&b_word, &a_word)?.counit();
                    t_sharp_counit.record(eps.is_zero(), || {
                        format!("b=F[{};{}], a=E[{};{}]: eps = {}", i + 1, n, j + 1, m, eps)
                    });

                    // Axiom 16: coaction compatibility on the plus side.
                    let mut lhs = UTensor::zero(ctx);
                    let mut rhs = UTensor::zero(ctx);
                    for (b1, b2, bc) in braided_delta2(ctx, &b_word, Side::F)? {
                        for (a1, a2, ac) in braided_delta2(ctx, &a_word, Side::E)? {
                            let c = &bc * &ac;
                            let value = td.harpoon_left(&b1, &a1)?;
                            let b1_coact = torus_mono(&coaction_minus(ctx, &b1));
                            let s = td.sharp(&b2, &a2)?;
                            for (wm, welem, wc) in lambda_legs(&value)? {
                                let torus = wm.mul(&b1_coact).mul(&s);
                                lhs = lhs.add(
                                    &UTensor::of(&UElem::from_torus(ctx, &torus), &welem)
                                        .scalar_mul(&(&c * &wc)),
                                );
                            }
                            let s1 = td.sharp(&b1, &a1)?;
                            let torus = s1.mul(&torus_mono(&coaction_plus(ctx, &a2)));
                            let acted = act_left(ctx, &b1_coact, &td.harpoon_left(&b2, &a2)?)?;
                            rhs = rhs.add(
                                &UTensor::of(&UElem::from_torus(ctx, &torus), &acted)
                                    .scalar_mul(&c),
                            );
                        }
                    }
                    t_coact_plus.record(lhs == rhs, || {
                        format!("b=F[{};{}], a=E[{};{}]", i + 1, n, j + 1, m)
                    });

                    // Axiom 17: coaction compatibility on the minus side.
                    let mut lhs = UTensor::zero(ctx);
                    let mut rhs = UTensor::zero(ctx);
                    for (b1, b2, bc) in braided_delta2(ctx, &b_word, Side::F)? {
                        for (a1, a2, ac) in braided_delta2(ctx, &a_word, Side::E)? {
                            let c = &bc * &ac;
                            let value = td.harpoon_right(&b2, &a2)?;
                            let s1 = td.sharp(&b1, &a1)?;
                            let a2_coact = torus_mono(&coaction_plus(ctx, &a2));
                            for (welem, wm, wc) in rho_legs(&value)? {
                                let torus = s1.mul(&a2_coact).mul(&wm);
                                lhs = lhs.add(
                                    &UTensor::of(&welem, &UElem::from_torus(ctx, &torus))
                                        .scalar_mul(&(&c * &wc)),
                                );
                            }
                            let first = act_right(ctx, &td.harpoon_right(&b1, &a1)?, &a2_coact)?;
                            let torus = torus_mono(&coaction_minus(ctx, &b1)).mul(&td.sharp(&b2, &a2)?);
                            rhs = rhs.add(
                                &UTensor::of(&first, &UElem::from_torus(ctx, &torus)).scalar_mul(&c),
                            );
                        }
                    }
                    t_coact_minus.record(lhs == rhs, || {
                        format!("b=F[{};{}], a=E[{};{}]", i + 1, n, j + 1, m)
                    });

                    // Product-compatibility axioms over a third generator.
                    for k in 0..rank {
                        for p in 1..=bound {
                            let c_word = simple_letter(k, p);

                            // b ♯ (a c) = (b1 ♯ a1) a2_(-1) ((b2 ↼ a2_0) ♯ c).
                            let ac_prod = UElem::from_e_word(ctx, a_word.clone())?
                                .multiply(&UElem::from_e_word(ctx, c_word.clone())?)?;
                            let lhs = td.sharp_elem(&b_elem, &ac_prod)?;
                            let mut rhs = SpecTorusElem::zero(&ctx.spec);
                            for (b1, b2, bc) in braided_delta2(ctx, &b_word, Side::F)? {
                                for (a1, a2, ac2) in braided_delta2(ctx, &a_word, Side::E)? {
                                    let s1 = td.sharp(&b1, &a1)?;
                                    if s1.is_zero() {
                                        continue;
                                    }
                                    let mid = td.harpoon_right(&b2, &a2)?;
                                    for (mw, mc) in elem_to_word_sum(ctx, &mid, Side::F)? {
                                        let inner = td.sharp(&mw, &c_word)?;
                                        if inner.is_zero() {
                                            continue;
                                        }
                                        let term = s1
                                            .mul(&torus_mono(&coaction_plus(ctx, &a2)))
                                            .mul(&inner)
                                            .scalar_mul(&(&(&bc * &ac2) * &mc));
                                        rhs = rhs.add(&term);
                                    }
                                }
                            }
                            t_sharp_right.record(lhs == rhs, || {
                                format!(
                                    "b=F[{};{}], a=E[{};{}], c=E[{};{}]",
                                    i + 1, n, j + 1, m, k + 1, p
                                )
                            });

                            // (b d) ♯ a with d = F_k^(p).
                            let d_word = simple_letter(k, p);
                            let bd_prod = UElem::from_f_word(ctx, b_word.clone())?
                                .multiply(&UElem::from_f_word(ctx, d_word.clone())?)?;
                            let lhs = td.sharp_elem(&bd_prod, &a_elem)?;
                            let mut rhs = SpecTorusElem::zero(&ctx.spec);
                            for (d1, d2, dc) in braided_delta2(ctx, &d_word, Side::F)? {
                                for (a1, a2, ac2) in braided_delta2(ctx, &a_word, Side::E)? {
                                    let moved = td.harpoon_left(&d1, &a1)?;
                                    for (mw, mc) in elem_to_word_sum(ctx, &moved, Side::E)? {
                                        let s1 = td.sharp(&b_word, &mw)?;
                                        if s1.is_zero() {
                                            continue;
                                        }
                                        let s2 = td.sharp(&d2, &a2)?;
                                        if s2.is_zero() {
                                            continue;
                                        }
                                        let term = s1
                                            .mul(&torus_mono(&coaction_minus(ctx, &d1)))
                                            .mul(&s2)
                                            .scalar_mul(&(&(&dc * &ac2) * &mc));
                                        rhs = rhs.add(&term);
                                    }
                                }
                            }
                            t_sharp_left.record(lhs == rhs, || {
                                format!(
                                    "b=F[{};{}], d=F[{};{}], a=E[{};{}]",
                                    i + 1, n, k + 1, p, j + 1, m
                                )
                            });

                            // b ⇀ (a c) via the action-product formula.
                            let lhs = td.harpoon_left_elem(&b_elem, &ac_prod)?;
                            let mut rhs = UElem::zero(ctx);
                            for (b1, b2, b3, bc) in braided_delta3(ctx, &b_word, Side::F)? {
                                for (a1, a2, a3, ac3) in braided_delta3(ctx, &a_word, Side::E)? {
                                    let first = td.harpoon_left(&b1, &a1)?;
                                    if first.is_zero() {
                                        continue;
                                    }
                                    let s = td.sharp(&b2, &a2)?;
                                    if s.is_zero() {
                                        continue;
                                    }
                                    let torus = torus_mono(&coaction_minus(ctx, &b1))
                                        .mul(&s)
                                        .mul(&torus_mono(&coaction_plus(ctx, &a3)));
                                    let tail = td.harpoon_right(&b3, &a3)?;
                                    let mut inner = UElem::zero(ctx);
                                    for (tw, tc) in elem_to_word_sum(ctx, &tail, Side::F)? {
                                        inner = inner
                                            .add(&td.harpoon_left(&tw, &c_word)?.scalar_mul(&tc));
                                    }
                                    let acted = act_left(ctx, &torus, &inner)?;
                                    let term = first
                                        .multiply(&acted)?
                                        .scalar_mul(&(&bc * &ac3));
                                    rhs = rhs.add(&term);
                                }
                            }
                            t_act_product.record(lhs == rhs, || {
                                format!(
                                    "b=F[{};{}], a=E[{};{}], c=E[{};{}]",
                                    i + 1, n, j + 1, m, k + 1, p
                                )
                            });

                            // (b d) ↼ a via the mirror formula.
                            let lhs = td.harpoon_right_elem(&bd_prod, &a_elem)?;
                            let mut rhs = UElem::zero(ctx);
                            for (d1, d2, d3, dc) in braided_delta3(ctx, &d_word, Side::F)? {
                                for (a1, a2, a3, ac3) in braided_delta3(ctx, &a_word, Side::E)? {
                                    let moved = td.harpoon_left(&d1, &a1)?;
                                    for (mw, mc) in elem_to_word_sum(ctx, &moved, Side::E)? {
                                        let first = td.harpoon_right(&b_word, &mw)?;
                                        if first.is_zero() {
                                            continue;
                                        }
                                        let s = td.sharp(&d2, &a2)?;
                                        if s.is_zero() {
                                            continue;
                                        }
                                        let torus = torus_mono(&coaction_minus(ctx, &d1))
                                            .mul(&s)
                                            .mul(&torus_mono(&coaction_plus(ctx, &a3)));
                                        let acted = act_right(ctx, &first, &torus)?;
                                        let tail = td.harpoon_right(&d3, &a3)?;
                                        let term = acted
                                            .multiply(&tail)?
                                            .scalar_mul(&(&(&dc * &ac3) * &mc));
                                        rhs = rhs.add(&term);
                                    }
                                }
                            }
                            t_ract_product.record(lhs == rhs, || {
                                format!(
                                    "b=F[{};{}], d=F[{};{}], a=E[{};{}]",
                                    i + 1, n, k + 1, p, j + 1, m
                                )
                            });
                        }
                    }
                }
            }
        }
    }

    Ok(vec![
        t_action_left.finish(label, bound),
        t_unit_left.finish(label, bound),
        t_comult_left.finish(label, bound),
        t_action_right.finish(label, bound),
        t_unit_right.finish(label, bound),
        t_comult_right.finish(label, bound),
        t_mixed.finish(label, bound),
        t_sharp_h.finish(label, bound),
        t_sharp_comult.finish(label, bound),
        t_sharp_counit.finish(label, bound),
        t_sharp_right.finish(label, bound),
        t_sharp_left.finish(label, bound),
        t_sharp_units.finish(label, bound),
        t_act_product.finish(label, bound),
        t_ract_product.finish(label, bound),
        t_coact_plus.finish(label, bound),
        t_coact_minus.finish(label, bound),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanMatrix;
    use crate::cyclotomic::CycParams;

    fn a1ctx(ell: i64) -> Arc<UqContext> {
        UqContext::new(CartanMatrix::a1(), CycParams::new(ell).unwrap())
    }

    fn a2ctx(ell: i64) -> Arc<UqContext> {
        UqContext::new(CartanMatrix::a2(), CycParams::new(ell).unwrap())
    }

    #[test]
    fn generator_table_values() {
        let ctx = a1ctx(3);
        let td = TdDatum::new(&ctx);
        // F_i ⇀ E_i^(M) = -[M-1] E^(M-1) (the theorem value at N = 1).
        for m in 2..=6u32 {
            let v = td.harpoon_left(&simple_letter(0, 1), &simple_letter(0, m)).unwrap();
            let coeff = -&ctx.params().q_int_xi(m as i64 - 1).unwrap();
            let expect = UElem::e_gen(&ctx, 0, m - 1).scalar_mul(&coeff);
            assert_eq!(v, expect, "M = {}", m);
        }
        // F^(l) ⇀ E^(ln) is +-(n-1) E^(ln - l); the sign is
        // (-1)^l [ln-1 choose l] evaluated at xi, which the projection
        // oracle confirms (for odd l it is -(n-1) for every n).
        let ell = 3u32;
        for n in 2..=3u32 {
            let v = td
                .harpoon_left(&simple_letter(0, ell), &simple_letter(0, ell * n))
                .unwrap();
            let expect = UElem::e_gen(&ctx, 0, ell * (n - 1))
                .scalar_mul(&ctx.params().from_int(-(n as i64 - 1)));
            assert_eq!(v, expect, "n = {}", n);
            let engine = UElem::f_gen(&ctx, 0, ell)
                .multiply(&UElem::e_gen(&ctx, 0, ell * n))
                .unwrap()
                .project(Side::E);
            assert_eq!(v, engine, "projection oracle at n = {}", n);
        }
        // F^(l) ⇀ E^(M) = (-1)^l [M-1 choose l] E^(M-l): zero for M <= l,
        // and always equal to the engine projection.
        for m in [1u32, 2, 3] {
            let v = td.harpoon_left(&simple_letter(0, 3), &simple_letter(0, m)).unwrap();
            assert!(v.is_zero(), "M = {}", m);
        }
        for m in [4u32, 5, 7] {
            let v = td.harpoon_left(&simple_letter(0, 3), &simple_letter(0, m)).unwrap();
            let engine = UElem::f_gen(&ctx, 0, 3)
                .multiply(&UElem::e_gen(&ctx, 0, m))
                .unwrap()
                .project(Side::E);
            assert_eq!(v, engine, "M = {}", m);
            assert!(!v.is_zero(), "M = {}", m);
        }
        // F ♯ E = [K^-1; 0; 1] = -k_1.
        let sh = td.sharp(&simple_letter(0, 1), &simple_letter(0, 1)).unwrap();
        let expect = ctx.spec_k(0, 1).unwrap().neg();
        assert_eq!(sh, expect);
        // F^(2) ♯ E^(3) = 0.
        let sh = td.sharp(&simple_letter(0, 2), &simple_letter(0, 3)).unwrap();
        assert!(sh.is_zero());
        // Cross-index values vanish.
        let ctx2 = a2ctx(3);
        let td2 = TdDatum::new(&ctx2);
        let v = td2.harpoon_left(&simple_letter(0, 1), &simple_letter(1, 2)).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn right_action_generator_values() {
        // F^(N) acted on by E: -[N-1] F^(N-1), and the engine projection
        // agrees.
        let ctx = a1ctx(7);
        let td = TdDatum::new(&ctx);
        for n in 2..=5u32 {
            let v = td.harpoon_right(&simple_letter(0, n), &simple_letter(0, 1)).unwrap();
            let coeff = -&ctx.params().q_int_xi(n as i64 - 1).unwrap();
            assert_eq!(v, UElem::f_gen(&ctx, 0, n - 1).scalar_mul(&coeff), "N = {}", n);
            let engine = UElem::from_f_word(&ctx, simple_letter(0, n))
                .unwrap()
                .multiply(&UElem::e_gen(&ctx, 0, 1))
                .unwrap()
                .project(Side::F);
            assert_eq!(v, engine, "projection oracle at N = {}", n);
        }
    }

    #[test]
    fn plus_only_triples_multiply_in_the_plus_factor() {
        // (a, 1, 1) . (c, 1, 1) = (a c, 1, 1).
        let ctx = a2ctx(3);
        let td = TdDatum::new(&ctx);
        let h = SpecTorusMonomial::unit(2);
        let a = simple_letter(0, 1);
        let c = simple_letter(1, 2);
        let recon =
            reconstruct_product(&td, (&a, &h, &Vec::new()), (&c, &h, &Vec::new())).unwrap();
        let engine = UElem::from_e_word(&ctx, a.clone())
            .unwrap()
            .multiply(&UElem::from_e_word(&ctx, c.clone()).unwrap())
            .unwrap();
        assert_eq!(recon, engine);
    }

    #[test]
    fn unit_laws() {
        let ctx = a1ctx(3);
        let td = TdDatum::new(&ctx);
        // 1 ⇀ a = a, b ↼ 1 = b, b ♯ 1 = eps(b), 1 ♯ a = eps(a).
        let a = simple_letter(0, 2);
        let v = td.harpoon_left(&Vec::new(), &a).unwrap();
        assert_eq!(v, UElem::e_gen(&ctx, 0, 2));
        let b = simple_letter(0, 3);
        let v = td.harpoon_right(&b, &Vec::new()).unwrap();
        assert_eq!(v, UElem::f_gen(&ctx, 0, 3));
        assert!(td.sharp(&b, &Vec::new()).unwrap().is_zero());
        assert!(td.sharp(&Vec::new(), &a).unwrap().is_zero());
        assert!(td.sharp(&Vec::new(), &Vec::new()).unwrap().is_one());
    }

    #[test]
    fn braided_coproduct_is_multiplicative() {
        // Delta(F^(2)) via the word [F, F] (merged product [2] F^(2)) equals
        // [2] Delta(F^(2)) computed on the single letter.
        let ctx = a1ctx(3);
        let two_letters: Word = vec![
            Letter { root: Root::Simple(0), exp: 1 },
            Letter { root: Root::Simple(0), exp: 1 },
        ];
        let single: Word = simple_letter(0, 2);
        let d_two = braided_delta2(&ctx, &two_letters, Side::F).unwrap();
        let d_single = braided_delta2(&ctx, &single, Side::F).unwrap();
        let norm = |legs: Vec<(Word, Word, CycNum)>| {
            let mut map: std::collections::BTreeMap<(Word, Word), CycNum> = Default::default();
            for (u, w, c) in legs {
                let e = map
                    .entry((u, w))
                    .or_insert_with(|| ctx.params().zero());
                *e = &*e + &c;
            }
            map.retain(|_, c| !c.is_zero());
            map
        };
        let lhs = norm(d_two);
        let rhs = norm(
            d_single
                .into_iter()
                .map(|(u, w, c)| {
                    let two = ctx.params().q_int_xi(2).unwrap();
                    (u, w, &c * &two)
                })
                .collect(),
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn braided_antipode_small_cases() {
        let ctx = a1ctx(3);
        // S_A(E) = -E; S_A(E^(2)) = xi E^(2) (from -E^(2) - S(E) xi E).
        let s1 = braided_antipode(&ctx, &simple_letter(0, 1), Side::E).unwrap();
        assert_eq!(s1, UElem::e_gen(&ctx, 0, 1).neg());
        let s2 = braided_antipode(&ctx, &simple_letter(0, 2), Side::E).unwrap();
        // Antipode axiom: S(E^(2)) + S(E) xi E + E^(2) = 0, and
        // S(E) E = -[2] E^(2), so S(E^(2)) = (xi [2] - 1) E^(2).
        let xi = ctx.params().xi();
        let two = ctx.params().q_int_xi(2).unwrap();
        let coeff = &(&xi * &two) - &ctx.params().one();
        assert_eq!(s2, UElem::e_gen(&ctx, 0, 2).scalar_mul(&coeff));
        // The axiom itself, on a slightly bigger word.
        for w in [simple_letter(0, 3), vec![Letter { root: Root::Simple(0), exp: 2 }]] {
            let mut acc = UElem::zero(&ctx);
            for (u, v, c) in braided_delta2(&ctx, &w, Side::E).unwrap() {
                let su = braided_antipode(&ctx, &u, Side::E).unwrap();
                let vv = word_sum_to_elem(&ctx, &vec![(v, c)], Side::E).unwrap();
                acc = acc.add(&su.multiply(&vv).unwrap());
            }
            assert!(acc.is_zero(), "w = {:?}", w);
        }
    }

    #[test]
    fn oracle_equivalence_a1_small() {
        let ctx = a1ctx(2);
        let checks = verify_oracle_equivalence(&ctx, "A1", 4).unwrap();
        for c in &checks {
            assert!(c.passed(), "{}: {:?}", c.id, c.witness);
        }
    }

    #[test]
    fn reconstruction_against_engine_small() {
        let ctx = a1ctx(2);
        let checks = verify_reconstruction(&ctx, "A1", 25, 3, 20260809).unwrap();
        for c in &checks {
            assert!(c.passed(), "{}: {:?}", c.id, c.witness);
        }
        let checks = verify_reconstruction_coalgebra(&ctx, "A1", 3).unwrap();
        for c in &checks {
            assert!(c.passed(), "{}: {:?}", c.id, c.witness);
        }
    }


    #[test]
    fn td_axioms_small() {
        // The full l = 3 A2 sweep at bound l runs in the acceptance suite;
        // here a quick A1 pass at l = 2.
        let ctx = a1ctx(2);
        let checks = verify_td_axioms(&ctx, "A1", 2).unwrap();
        for c in &checks {
            assert!(c.passed(), "{}: {:?}", c.id, c.witness);
        }
    }

    #[test]
    fn yd_actions_match_engine_commutators() {
        // The diagonal actions agree with the adjoint computed through the
        // engine: g |> x = g x g^-1 and t |> x = t x - x t on the plus
        // side; mirror on the minus side.
        let ctx = a2ctx(3);
        let g = UElem::from_torus(&ctx, &SpecTorusElem::g_pow(&ctx.spec, 0, 1));
        let ginv = UElem::from_torus(&ctx, &SpecTorusElem::g_pow(&ctx.spec, 0, -1));
        let t = UElem::from_torus(&ctx, &SpecTorusElem::t_gen(&ctx.spec, 0));
        for x in [
            UElem::e_gen(&ctx, 0, 2),
            UElem::e_gen(&ctx, 1, 1).multiply(&UElem::e_gen(&ctx, 0, 3)).unwrap(),
        ] {
            let via_action =
                act_left(&ctx, &SpecTorusElem::g_pow(&ctx.spec, 0, 1), &x).unwrap();
            let via_engine = g.multiply(&x).unwrap().multiply(&ginv).unwrap();
            assert_eq!(via_action, via_engine);
            let via_action = act_left(&ctx, &SpecTorusElem::t_gen(&ctx.spec, 0), &x).unwrap();
            let via_engine = t.multiply(&x).unwrap().sub(&x.multiply(&t).unwrap());
            assert_eq!(via_action, via_engine);
        }
        for y in [
            UElem::f_gen(&ctx, 1, 2),
            UElem::f_gen(&ctx, 0, 1).multiply(&UElem::f_gen(&ctx, 1, 1)).unwrap(),
        ] {
            // Right action: y <| g = g^-1 y g, y <| t = y t - t y.
            let via_action =
                act_right(&ctx, &y, &SpecTorusElem::g_pow(&ctx.spec, 0, 1)).unwrap();
            let via_engine = ginv.multiply(&y).unwrap().multiply(&g).unwrap();
            assert_eq!(via_action, via_engine);
            let via_action = act_right(&ctx, &y, &SpecTorusElem::t_gen(&ctx.spec, 0)).unwrap();
            let via_engine = y.multiply(&t).unwrap().sub(&t.multiply(&y).unwrap());
            assert_eq!(via_action, via_engine);
        }
    }

    #[test]
    fn antipode_of_grouplike_triple() {
        let ctx = a1ctx(3);
        let td = TdDatum::new(&ctx);
        // S(1 (x) K_i (x) 1) = 1 (x) K_i^-1 (x) 1.
        let mut h = SpecTorusMonomial::unit(1);
        h.g[0] = 1;
        let s = reconstruct_antipode(&td, (&Vec::new(), &h, &Vec::new())).unwrap();
        let expect = UElem::from_torus(&ctx, &SpecTorusElem::g_pow(&ctx.spec, 0, -1));
        assert_eq!(s, expect);
    }
}
