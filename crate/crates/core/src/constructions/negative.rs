use std::sync::Arc;

use crate::coding::{factorization_map, recognizability_radius, Coding};
use crate::error::{Error, Result};
use crate::language::{complexity, DirectiveSequence, LanguageProvider, SAdicLanguage, Tail};
use crate::morphism::Morphism;
use crate::report::Report;
use crate::words::{Alphabet, Word};

/// Block counts `ℓ_n`, scales `k_n` and exponents `p^n_j ∈ [8^j k_n, 2·8^j k_n)`
/// for `j = 1..=ℓ_n`, one entry per level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeFamilyParams {
    pub k: Vec<u64>,
    pub p: Vec<Vec<u64>>,
}

impl NegativeFamilyParams {
    pub fn new(k: Vec<u64>, p: Vec<Vec<u64>>) -> Result<Self> {
        if k.is_empty() || k.len() != p.len() {
            return Err(Error::invalid("need one scale and one exponent list per level"));
        }
        for (n, (&kn, row)) in k.iter().zip(&p).enumerate() {
            if kn == 0 || row.is_empty() {
                return Err(Error::invalid(format!("level {n} needs k ≥ 1 and at least one block")));
            }
            for (j, &pj) in row.iter().enumerate() {
                let low = 8u64.pow(j as u32 + 1) * kn;
                if pj < low || pj >= 2 * low {
                    return Err(Error::invalid(format!(
                        "p at level {n}, block {} is {pj}, outside [{low}, {})",
                        j + 1,
                        2 * low
                    )));
                }
            }
        }
        Ok(NegativeFamilyParams { k, p })
    }

    /// Smallest exponents: `p^n_j = 8^j k_n`.
    pub fn minimal(blocks: &[usize], k: &[u64]) -> Result<Self> {
        let p = blocks
            .iter()
            .zip(k)
            .map(|(&l, &kn)| (1..=l as u32).map(|j| 8u64.pow(j) * kn).collect())
            .collect();
        NegativeFamilyParams::new(k.to_vec(), p)
    }

    pub fn levels(&self) -> usize {
        self.k.len()
    }

    /// Exponents at level `n`; levels past the last repeat it.
    pub fn exponents(&self, n: usize) -> &[u64] {
        &self.p[n.min(self.p.len() - 1)]
    }
}

/// `a ↦ a^{p_1} ā^{p_1} … a^{p_ℓ} ā^{p_ℓ}` on `{0, 1}`.
pub fn negative_tau(params: &NegativeFamilyParams, n: usize) -> Result<Morphism> {
    let mut zero = Vec::new();
    for &p in params.exponents(n) {
        zero.extend(std::iter::repeat_n(0u8, p as usize));
        zero.extend(std::iter::repeat_n(1u8, p as usize));
    }
    let one = zero.iter().map(|&s| 1 - s).collect();
    Morphism::new(
        Alphabet::binary(),
        Alphabet::binary(),
        vec![Word::new(zero), Word::new(one)],
    )
}

/// The family's directive sequence, repeating the last level forever.
pub fn negative_dirseq(params: &NegativeFamilyParams) -> Result<DirectiveSequence> {
    let levels = (0..params.levels())
        .map(|n| negative_tau(params, n))
        .collect::<Result<Vec<_>>>()?;
    // every image contains both letters
    Ok(DirectiveSequence::new(levels, Tail::RepeatLast(1))?.with_primitive_hint(true))
}

/// Checks linear complexity with constant 1024 up to `k_max`, symmetric image
/// lengths, recognizability within `|τ_[0,n)|` and the factors `1 0^p 1`.
pub fn negative_family_verify(params: &NegativeFamilyParams, depth: usize, k_max: usize) -> Result<Report> {
    if depth == 0 || k_max == 0 {
        return Err(Error::invalid("depth and k_max must be positive"));
    }
    let dirseq = negative_dirseq(params)?;
    let mut report = Report::new("negative-family");

    let lang = SAdicLanguage::shared(dirseq.clone(), 0)?;
    let table = complexity(lang.as_ref(), k_max)?;
    let worst = (1..=k_max).find(|&k| table.p(k).unwrap() > 1024 * k);
    let (ratio_k, ratio) = (1..=k_max)
        .map(|k| (k, table.p(k).unwrap() as f64 / k as f64))
        .fold((1, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    report.check(
        "linear-complexity",
        worst.is_none(),
        match worst {
            None => format!("p(k) ≤ 1024k for k ≤ {k_max}"),
            Some(k) => format!("p({k}) = {}", table.p(k).unwrap()),
        },
    );
    report.note(format!("max p(k)/k = {ratio:.3} at k = {ratio_k}"));

    for n in 1..=depth {
        let block = dirseq.compose_range(0, n)?;
        let (zero, one) = (block.image(0)?, block.image(1)?);
        let swapped: Word = zero.iter().map(|&s| 1 - s).collect();
        report.check(
            format!("symmetric-lengths/{n}"),
            zero.len() == one.len() && swapped == *one,
            format!("|τ_[0,{n})| = {}", zero.len()),
        );

        let upper: Arc<dyn LanguageProvider> = SAdicLanguage::shared(dirseq.clone(), n)?;
        let width = block.max_len();
        let coding = Coding::new(block, upper)?;
        let radius = recognizability_radius(&coding, width)?;
        let detail = match radius {
            Some(r) => format!("radius {r} ≤ {width}"),
            None => match factorization_map(&coding, width)?.first_ambiguity() {
                Some((window, pairs)) => format!("window {} factors as {pairs:?}", runs(&window)),
                None => format!("no radius ≤ {width}"),
            },
        };
        report.check(format!("recognizable/{n}"), radius.is_some(), detail);
        if radius.is_none() && width <= 64 {
            let wider = recognizability_radius(&coding, 16 * width)?;
            report.note(format!(
                "least radius at level {n}: {}",
                wider.map_or_else(|| format!("> {}", 16 * width), |r| r.to_string())
            ));
        }
    }

    for n in 0..=depth {
        let level = SAdicLanguage::new(dirseq.clone(), n)?;
        for (j, &p) in params.exponents(n).iter().enumerate() {
            let mut w = vec![1u8];
            w.extend(std::iter::repeat_n(0u8, p as usize));
            w.push(1);
            let legal = level.contains(&w)?;
            report.check(
                format!("gap-factor/{n}/{}", j + 1),
                legal,
                format!("1 0^{p} 1"),
            );
        }
    }
    Ok(report)
}

/// Run-length form such as `0^8 1^8`.
fn runs(w: &Word) -> String {
    let mut out: Vec<String> = Vec::new();
    let s = w.as_slice();
    let mut i = 0;
    while i < s.len() {
        let j = i + s[i..].iter().take_while(|&&c| c == s[i]).count();
        out.push(if j - i == 1 { s[i].to_string() } else { format!("{}^{}", s[i], j - i) });
        i = j;
    }
    out.join(" ")
}
