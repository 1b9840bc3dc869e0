//! Seeded checks of the symmetry and indicator identities satisfied by
//! brackets and braces.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::brackets::{complement, permutation_sign, sign_q, Brackets, IndexWord};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::report::Report;
use crate::resolution::GradedFreeResolution;

fn second(p: &Polynomial, i: usize, j: usize) -> Result<Rational> {
    Ok(p.derivative(i - 1)?.derivative(j - 1)?.constant_term())
}

fn parity(e: usize) -> Rational {
    sign_q(if e % 2 == 0 { 1 } else { -1 })
}

fn shuffled(rng: &mut impl Rng, labels: Vec<usize>) -> Vec<usize> {
    let mut v = labels;
    v.shuffle(rng);
    v
}

fn labels_with_repeats(rng: &mut impl Rng, nv: usize, len: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(1..=nv)).collect()
}

/// `k` distinct labels from `1..=nv` in random order.
fn distinct(rng: &mut impl Rng, nv: usize, k: usize) -> Vec<usize> {
    let mut v = shuffled(rng, (1..=nv).collect());
    v.truncate(k);
    v
}

fn sign(from: &[usize], to: &[usize]) -> Rational {
    sign_q(permutation_sign(from, to).expect("same label set"))
}

fn word(parts: &[&[usize]]) -> IndexWord {
    IndexWord::concat(parts)
}

type Case<'a, R> = Box<dyn Fn(&mut R) -> Result<Option<String>> + 'a>;

fn compare(lhs: Rational, rhs: Rational, what: impl FnOnce() -> String) -> Option<String> {
    (lhs != rhs).then(|| format!("{}: {lhs} != {rhs}", what()))
}

fn compare_poly(
    lhs: &Polynomial,
    rhs: &Polynomial,
    what: impl FnOnce() -> String,
) -> Option<String> {
    (lhs != rhs).then(what)
}

/// Runs every identity `cases` times on fresh random index choices. The
/// interior-swap and four-term identities need `n >= 6` and are skipped
/// below that.
pub fn symmetry_check<R: Rng>(
    f: &GradedFreeResolution,
    rng: &mut R,
    cases: usize,
) -> Result<Report> {
    let n = f.n();
    if n < 5 {
        return Err(Error::InvalidInput("symmetry suite needs n >= 5".into()));
    }
    let br = Brackets::new(f)?;
    let nv = n - 1;
    let m = n - 2;
    let b = |w: &IndexWord| br.bracket(w);
    let bb = |w: &IndexWord| br.double_bracket(w);
    let brace = |w: &IndexWord| br.brace(w);
    let two_n = Rational::from(2 * n as i64);
    let ind = |c: bool| Rational::from(i64::from(c));

    let mut cases_list: Vec<(&str, Case<R>)> = Vec::new();
    if m >= 4 {
        cases_list.push((
            "interior swap",
            Box::new(|rng: &mut R| {
                let a = labels_with_repeats(rng, nv, m);
                let r = rng.gen_range(1..m - 2);
                let w = IndexWord::new(a);
                Ok(compare_poly(
                    &b(&w.swapped(r, r + 1))?,
                    &b(&w)?.neg(),
                    || format!("{:?} at {r}", w.entries()),
                ))
            }),
        ));
    }
    cases_list.push((
        "reversal",
        Box::new(|rng: &mut R| {
            let w = IndexWord::new(labels_with_repeats(rng, nv, m));
            let lhs = b(&w)?;
            let rhs = b(&w.reversed())?;
            let rhs = if m % 4 <= 1 { rhs } else { rhs.neg() };
            Ok(compare_poly(&lhs, &rhs, || format!("{:?}", w.entries())))
        }),
    ));
    cases_list.push((
        "end swap",
        Box::new(|rng: &mut R| {
            let w = IndexWord::new(labels_with_repeats(rng, nv, m));
            Ok(compare_poly(
                &b(&w)?,
                &b(&w.swapped(0, m - 1))?.neg(),
                || format!("{:?}", w.entries()),
            ))
        }),
    ));
    if m >= 4 {
        cases_list.push((
            "four-term",
            Box::new(|rng: &mut R| {
                let w = IndexWord::new(labels_with_repeats(rng, nv, m));
                let s1 = w.swapped(0, 1);
                let s2 = w.swapped(m - 2, m - 1);
                let s12 = s1.swapped(m - 2, m - 1);
                let sum = b(&w)?.add(&b(&s1)?).add(&b(&s2)?).add(&b(&s12)?);
                Ok((!sum.is_zero()).then(|| format!("{:?}", w.entries())))
            }),
        ));
    }
    cases_list.push((
        "double bracket alternation",
        Box::new(|rng: &mut R| {
            let a = distinct(rng, nv, m);
            let t = shuffled(rng, a.clone());
            let lhs = bb(&IndexWord::new(t.clone()))?;
            let rhs = bb(&IndexWord::new(a.clone()))?.scale(&sign(&a, &t));
            Ok(compare_poly(&lhs, &rhs, || format!("{a:?} -> {t:?}")))
        }),
    ));
    cases_list.push((
        "double bracket repeat",
        Box::new(|rng: &mut R| {
            let mut a = labels_with_repeats(rng, nv, m);
            let (p, q) = (rng.gen_range(0..m), rng.gen_range(0..m));
            if p == q {
                return Ok(None);
            }
            a[p] = a[q];
            let v = bb(&IndexWord::new(a.clone()))?;
            Ok((!v.is_zero()).then(|| format!("{a:?}")))
        }),
    ));
    cases_list.push((
        "brace interior alternation",
        Box::new(|rng: &mut R| {
            let w = labels_with_repeats(rng, nv, n);
            let mid = w[2..n - 2].to_vec();
            let pos: Vec<usize> = (0..mid.len()).collect();
            let tau = shuffled(rng, pos.clone());
            let permuted: Vec<usize> = tau.iter().map(|&t| mid[t]).collect();
            let lhs = brace(&word(&[&w[..2], &permuted, &w[n - 2..]]))?;
            let rhs = sign(&pos, &tau) * brace(&IndexWord::new(w.clone()))?;
            Ok(compare(lhs, rhs, || format!("{w:?} by {tau:?}")))
        }),
    ));
    cases_list.push((
        "brace anchored alternation",
        Box::new(|rng: &mut R| {
            let mut w = labels_with_repeats(rng, nv, n);
            let p = rng.gen_range(1..n - 2);
            w[p] = w[0];
            let pos: Vec<usize> = (0..n - 3).collect();
            let tau = shuffled(rng, pos.clone());
            let permuted: Vec<usize> = tau.iter().map(|&t| w[1 + t]).collect();
            let lhs = brace(&word(&[&w[..1], &permuted, &w[n - 2..]]))?;
            let rhs = sign(&pos, &tau) * brace(&IndexWord::new(w.clone()))?;
            Ok(compare(lhs, rhs, || format!("{w:?} by {tau:?}")))
        }),
    ));
    cases_list.push((
        "brace reversed anchored alternation",
        Box::new(|rng: &mut R| {
            let mut w = labels_with_repeats(rng, nv, n);
            let p = rng.gen_range(2..n - 1);
            w[p] = w[n - 1];
            let pos: Vec<usize> = (0..n - 3).collect();
            let tau = shuffled(rng, pos.clone());
            let permuted: Vec<usize> = tau.iter().map(|&t| w[2 + t]).collect();
            let lhs = brace(&word(&[&w[..2], &permuted, &w[n - 1..]]))?;
            let rhs = sign(&pos, &tau) * brace(&IndexWord::new(w.clone()))?;
            Ok(compare(lhs, rhs, || format!("{w:?} by {tau:?}")))
        }),
    ));
    cases_list.push((
        "brace head-tail",
        Box::new(|rng: &mut R| {
            let w = labels_with_repeats(rng, nv, n);
            let swapped = word(&[&w[n - 2..], &w[2..n - 2], &w[..2]]);
            Ok(compare(
                brace(&IndexWord::new(w.clone()))?,
                -brace(&swapped)?,
                || format!("{w:?}"),
            ))
        }),
    ));
    cases_list.push((
        "triple relation",
        Box::new(|rng: &mut R| {
            let ijk = distinct(rng, nv, 3);
            let (i, j, k) = (ijk[0], ijk[1], ijk[2]);
            let a = labels_with_repeats(rng, nv, n - 3);
            let sum = brace(&word(&[&[i, j, k], &a]))?
                + brace(&word(&[&[j, k, i], &a]))?
                + brace(&word(&[&[k, i, j], &a]))?;
            Ok(compare(sum, Rational::from(0), || {
                format!("({i},{j},{k}) {a:?}")
            }))
        }),
    ));
    cases_list.push((
        "reversed triple relation",
        Box::new(|rng: &mut R| {
            let ijk = distinct(rng, nv, 3);
            let (i, j, k) = (ijk[0], ijk[1], ijk[2]);
            let a = labels_with_repeats(rng, nv, n - 3);
            let sum = brace(&word(&[&a, &[k, j, i]]))?
                + brace(&word(&[&a, &[i, k, j]]))?
                + brace(&word(&[&a, &[j, i, k]]))?;
            Ok(compare(sum, Rational::from(0), || {
                format!("({i},{j},{k}) {a:?}")
            }))
        }),
    ));
    cases_list.push((
        "a-form independence",
        Box::new(|rng: &mut R| {
            let ij = distinct(rng, nv, 2);
            let (i, j) = (ij[0], ij[1]);
            let rest = complement(nv, &[i, j]);
            let a1 = shuffled(rng, rest.clone());
            let a2 = shuffled(rng, rest);
            let mut a3 = a1.clone();
            a3.swap(n - 5, n - 4);
            let v = br.a_form(i, j, &a1)?;
            let other = br.a_form(i, j, &a2)?;
            let swapped = br.a_form(i, j, &a3)?;
            Ok(
                compare(other, v.clone(), || format!("({i},{j}) {a1:?} vs {a2:?}")).or(compare(
                    swapped,
                    v,
                    || format!("({i},{j}) last two of {a1:?}"),
                )),
            )
        }),
    ));
    cases_list.push((
        "mixed indicator",
        Box::new(|rng: &mut R| {
            let ijk = distinct(rng, nv, 3);
            let (i, j, k) = (ijk[0], ijk[1], ijk[2]);
            let rest = complement(nv, &[i, j, k]);
            let a = shuffled(rng, complement(nv, &[k]));
            let s = sign(&a, &word(&[&[i], &rest, &[j]]).entries().to_vec());
            let ends = [a[0], a[m - 1]];
            let target = brace(&word(&[&[i, i], &rest, &[j, j]]))?;
            let factor = Rational::from(2) + ind(ends.contains(&i)) + ind(ends.contains(&j));
            let w = IndexWord::new(a.clone());
            let single = second(&b(&w)?, i, j)?;
            let double = second(&bb(&w)?, i, j)?;
            Ok(compare(single, &s * factor * &target, || {
                format!("[{a:?}] ({i},{j})")
            })
            .or(compare(double, s * &two_n * target, || {
                format!("[[{a:?}]]")
            })))
        }),
    ));
    cases_list.push((
        "square indicator",
        Box::new(|rng: &mut R| {
            let ij = distinct(rng, nv, 2);
            let (i, j) = (ij[0], ij[1]);
            let rest = complement(nv, &[i, j]);
            let a = shuffled(rng, complement(nv, &[j]));
            let s = sign(&a, word(&[&[i], &rest]).entries());
            let target = brace(&word(&[&[i, i], &rest, &[i]]))?;
            let factor = Rational::from(2) * (Rational::from(1) + ind(a[0] == i || a[m - 1] == i));
            let w = IndexWord::new(a.clone());
            let single = second(&b(&w)?, i, i)?;
            let double = second(&bb(&w)?, i, i)?;
            Ok(compare(single, &s * factor * &target, || {
                format!("[{a:?}] ({i},{j})")
            })
            .or(compare(double, s * &two_n * target, || {
                format!("[[{a:?}]]")
            })))
        }),
    ));
    cases_list.push((
        "split indicator",
        Box::new(|rng: &mut R| {
            let ijk = distinct(rng, nv, 3);
            let (i, j, k) = (ijk[0], ijk[1], ijk[2]);
            let rest = complement(nv, &[i, j, k]);
            let ab = shuffled(rng, complement(nv, &[j, k]));
            let r = rng.gen_range(0..=ab.len());
            let (a, bs) = ab.split_at(r);
            let s_len = bs.len();
            let sg = sign(&ab, word(&[&[i], &rest]).entries());
            let edge = a.first() == Some(&i) || bs.last() == Some(&i);
            let factor = Rational::from(2) + ind(edge) + ind(r * s_len == 0);
            let target = brace(&word(&[&[i, i], &rest, &[j, k]]))?;
            let w1 = word(&[a, &[k], bs]);
            let w2 = word(&[a, &[j], bs]);
            let lhs = second(&b(&w1)?, i, j)? + second(&b(&w2)?, i, k)?;
            let lhs2 = second(&bb(&w1)?, i, j)? + second(&bb(&w2)?, i, k)?;
            let sg = sg * parity(s_len);
            Ok(compare(lhs, &sg * factor * &target, || {
                format!("{a:?} | {bs:?} ({i},{j},{k})")
            })
            .or(compare(lhs2, sg * &two_n * target, || {
                format!("double, {a:?} | {bs:?}")
            })))
        }),
    ));
    cases_list.push((
        "a-form indicator",
        Box::new(|rng: &mut R| {
            let ij = distinct(rng, nv, 2);
            let (i, j) = (ij[0], ij[1]);
            let rest = complement(nv, &[i, j]);
            let ab = shuffled(rng, rest.clone());
            let r = rng.gen_range(0..=ab.len());
            let (a, bs) = ab.split_at(r);
            let sg = sign(&ab, &rest) * parity(r);
            let av = br.a_form(i, j, &rest)?;
            let factor = Rational::from(2) * (Rational::from(1) + ind(r * bs.len() == 0));
            let w1 = word(&[a, &[j], bs]);
            let w2 = word(&[a, &[i], bs]);
            let two = Rational::from(2);
            let lhs = second(&b(&w1)?, i, i)? + &two * second(&b(&w2)?, i, j)?;
            let lhs2 = second(&bb(&w1)?, i, i)? + &two * second(&bb(&w2)?, i, j)?;
            Ok(compare(lhs, &sg * factor * &av, || {
                format!("{a:?} | {bs:?} ({i},{j})")
            })
            .or(compare(lhs2, sg * &two_n * av, || {
                format!("double, {a:?} | {bs:?}")
            })))
        }),
    ));

    let mut report = Report::new();
    for (name, case) in &cases_list {
        let mut outcome = Ok(());
        for _ in 0..cases {
            if let Some(msg) = case(rng)? {
                outcome = Err(msg);
                break;
            }
        }
        report.check(*name, outcome);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Configuration;
    use crate::random;
    use crate::resolution::build_resolution;

    #[test]
    fn standard_and_random_symmetries() {
        for n in 5..=7 {
            let f = build_resolution(&Configuration::standard(n).unwrap()).unwrap();
            let r = symmetry_check(&f, &mut random::rng(n as u64), 20).unwrap();
            assert!(r.passed(), "standard {n}\n{r}");
            let c = random::configuration(&mut random::rng(100 + n as u64), n);
            let f = build_resolution(&c).unwrap();
            let r = symmetry_check(&f, &mut random::rng(n as u64), 20).unwrap();
            assert!(r.passed(), "random {n}\n{r}");
        }
    }
}
