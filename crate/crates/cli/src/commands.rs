use nbtail_core::chvatal::{
    a_seq_integral, a_seq_sum, binomial_chvatal_argmin, bound_222_check,
    coefficient_identity_check, g_decrease_check, global_infimum, interval_infimum, lemma22_check,
    monotonicity_check, nearest_to_two_thirds,
};
use nbtail_core::nbdist::{
    mean_interval_index_rational, mean_tail_prob_rational, nb_cdf_beta, nb_cdf_sum, nb_pmf,
    MAX_DIRECT_TERMS,
};
use nbtail_core::oracle::mc_cdf_estimate;
use nbtail_core::{NBParams, Rational, Result, SampleStream, VerifyReport};
use num_traits::{One, ToPrimitive};

use crate::args::{Command, Flags, Num, Suite, Usage};
use crate::record::OutputRecord;

pub const LEMMA21_SHAPES: [f64; 7] = [0.3, 0.5, 1.0, 2.0, 2.7, 5.0, 10.0];
pub const LEMMA22_SHAPES: [f64; 4] = [0.5, 1.0, 3.0, 8.0];
pub const COEFF_SHAPES: [f64; 4] = [0.5, 1.0, 2.0, 3.3];
pub const SWEEP_SHAPES: [f64; 5] = [0.5, 1.0, 2.0, 3.0, 7.5];
pub const SWEEP_POINTS: u64 = 10_000;
pub const G_SAMPLES: usize = 100;

pub fn run(command: Command, flags: &Flags) -> Usage<Vec<OutputRecord>> {
    flags.tol()?;
    match command {
        Command::Pmf => pmf(flags),
        Command::Cdf => cdf(flags),
        Command::MeanTail => mean_tail(flags),
        Command::Inf => inf(flags),
        Command::ASeq => a_seq(flags),
        Command::Verify => verify(flags),
        Command::Sweep => sweep(flags),
        Command::Sample => sample(flags),
    }
}

/// Runs `eval`, turning a library error into an error record that keeps the inputs.
fn record(
    base: OutputRecord,
    eval: impl FnOnce(OutputRecord) -> Result<OutputRecord>,
) -> OutputRecord {
    let fallback = base.clone();
    eval(base).unwrap_or_else(|e| fallback.error(e))
}

fn report(rec: OutputRecord, rep: &VerifyReport) -> OutputRecord {
    rec.output("lhs", rep.lhs)
        .output("rhs", rep.rhs)
        .output("abs_err", rep.abs_err)
        .output("rel_err", rep.rel_err)
        .output("tolerance", rep.tolerance)
        .passed(rep.passed)
}

fn pmf(flags: &Flags) -> Usage<Vec<OutputRecord>> {
    let (rs, ps, ns) = (
        flags.require_shapes()?,
        flags.require_probs()?,
        flags.require_counts()?,
    );
    let mut out = Vec::new();
    for r in &rs {
        for p in &ps {
            for &n in &ns {
                let base = OutputRecord::new("pmf")
                    .input("r", r.value)
                    .input("p", p.value)
                    .input("n", n);
                out.push(record(base, |rec| {
                    let params = NBParams::new(r.value, p.value)?;
                    Ok(rec.output("pmf", nb_pmf(params, n).value()))
                }));
            }
        }
    }
    Ok(out)
}

fn cdf(flags: &Flags) -> Usage<Vec<OutputRecord>> {
    let (rs, ps, ns) = (
        flags.require_shapes()?,
        flags.require_probs()?,
        flags.require_counts()?,
    );
    let mut out = Vec::new();
    for r in &rs {
        for p in &ps {
            for &n in &ns {
                let base = OutputRecord::new("cdf")
                    .input("r", r.value)
                    .input("p", p.value)
                    .input("n", n);
                out.push(record(base, |rec| {
                    let params = NBParams::new(r.value, p.value)?;
                    let v = if n <= MAX_DIRECT_TERMS {
                        nb_cdf_sum(params, n)
                    } else {
                        nb_cdf_beta(params, n)?
                    };
                    Ok(rec
                        .output("cdf", v.value())
                        .output("path", v.path().to_string()))
                }));
            }
        }
    }
    Ok(out)
}

fn exact_mean(r: &Num, p: &Num) -> f64 {
    (&r.exact * (Rational::one() - &p.exact) / &p.exact)
        .to_f64()
        .unwrap_or(f64::NAN)
}

fn mean_tail(flags: &Flags) -> Usage<Vec<OutputRecord>> {
    let (rs, ps) = (flags.require_shapes()?, flags.require_probs()?);
    let mut out = Vec::new();
    for r in &rs {
        for p in &ps {
            let base = OutputRecord::new("mean-tail")
                .input("r", r.value)
                .input("p", p.value);
            out.push(record(base, |rec| {
                let index = mean_interval_index_rational(&r.exact, &p.exact)?;
                let v = mean_tail_prob_rational(&r.exact, &p.exact)?;
                Ok(rec
                    .output("n", index.n())
                    .output("mean", exact_mean(r, p))
                    .output("mean_tail_prob", v.value())
                    .output("path", v.path().to_string()))
            }));
        }
    }
    Ok(out)
}

fn inf(flags: &Flags) -> Usage<Vec<OutputRecord>> {
    let (rs, ns) = (flags.require_shapes()?, flags.counts()?);
    let mut out = Vec::new();
    for r in &rs {
        if ns.is_empty() {
            let base = OutputRecord::new("inf").input("r", r.value);
            out.push(record(base, |rec| {
                let inf = global_infimum(r.value)?;
                Ok(rec
                    .output("value", inf.value)
                    .output("attained", inf.attained))
            }));
        }
        for &n in &ns {
            let base = OutputRecord::new("inf").input("r", r.value).input("n", n);
            out.push(record(base, |rec| {
                let inf = interval_infimum(r.value, n)?;
                Ok(rec
                    .output("value", inf.value)
                    .output("attained", inf.attained))
            }));
        }
    }
    Ok(out)
}

fn a_seq(flags: &Flags) -> Usage<Vec<OutputRecord>> {
    let rs = flags.require_shapes()?;
    let n_max = flags.n_max_or(10)?;
    let mut out = Vec::new();
    for r in &rs {
        for n in 0..=n_max {
            let base = OutputRecord::new("a-seq").input("r", r.value).input("n", n);
            out.push(record(base, |rec| {
                Ok(rec
                    .output("value", a_seq_sum(r.value, n)?.value)
                    .output("integral", a_seq_integral(r.value, n)?.value))
            }));
        }
    }
    Ok(out)
}

fn verify(flags: &Flags) -> Usage<Vec<OutputRecord>> {
    let suites: &[Suite] = match flags.suite {
        Suite::All => &[
            Suite::Lemma21,
            Suite::Lemma22,
            Suite::Coeff,
            Suite::Monotone,
            Suite::Bound222,
            Suite::ChvatalBinomial,
        ],
        ref one => std::slice::from_ref(one),
    };
    let tol = flags.tol()?;
    let mut out = Vec::new();
    for &suite in suites {
        match suite {
            Suite::Lemma21 => verify_lemma21(flags, tol, &mut out)?,
            Suite::Lemma22 => verify_lemma22(flags, tol, &mut out)?,
            Suite::Coeff => verify_coeff(flags, tol, &mut out)?,
            Suite::Monotone => verify_monotone(flags, &mut out)?,
            Suite::Bound222 => verify_bound222(flags, &mut out)?,
            Suite::ChvatalBinomial => verify_chvatal(flags, &mut out)?,
            Suite::All => unreachable!(),
        }
    }
    Ok(out)
}

fn check(name: &'static str) -> OutputRecord {
    OutputRecord::new("verify").input("check", name)
}

fn verify_lemma21(flags: &Flags, tol: f64, out: &mut Vec<OutputRecord>) -> Usage<()> {
    let n_max = flags.n_max_or(100)?;
    for r in flags.shapes_or(&LEMMA21_SHAPES)? {
        for n in 0..=n_max {
            let base = check("lemma21").input("r", r.value).input("n", n);
            out.push(record(base, |rec| {
                let sum = a_seq_sum(r.value, n)?.value;
                let integral = a_seq_integral(r.value, n)?.value;
                Ok(report(rec, &VerifyReport::equality(sum, integral, tol)))
            }));
        }
    }
    Ok(())
}

fn verify_lemma22(flags: &Flags, tol: f64, out: &mut Vec<OutputRecord>) -> Usage<()> {
    let n_max = flags.n_max_or(30)?;
    for r in flags.shapes_or(&LEMMA22_SHAPES)? {
        for n in 0..=n_max {
            let base = check("lemma22").input("r", r.value).input("n", n);
            out.push(record(base, |rec| {
                Ok(report(rec, &lemma22_check(r.value, n, tol)?))
            }));
        }
    }
    Ok(())
}

fn verify_coeff(flags: &Flags, tol: f64, out: &mut Vec<OutputRecord>) -> Usage<()> {
    let n_max = flags.n_max_or(25)?;
    for r in flags.shapes_or(&COEFF_SHAPES)? {
        for n in 1..=n_max {
            for m in 1..=n {
                let base = check("coeff")
                    .input("r", r.value)
                    .input("n", n)
                    .input("m", m);
                out.push(record(base, |rec| {
                    let rep = coefficient_identity_check(r.value, n, m)?;
                    Ok(report(rec, &VerifyReport::equality(rep.lhs, rep.rhs, tol)))
                }));
            }
        }
    }
    Ok(())
}

fn verify_monotone(flags: &Flags, out: &mut Vec<OutputRecord>) -> Usage<()> {
    let n_max = flags.n_max_or(300)?;
    for r in flags.shapes_or(&LEMMA21_SHAPES)? {
        match monotonicity_check(r.value, n_max) {
            Ok(reps) => {
                for (n, rep) in (0u64..).zip(&reps) {
                    let rec = check("monotone").input("r", r.value).input("n", n);
                    out.push(report(rec, rep));
                }
            }
            Err(e) => out.push(check("monotone").input("r", r.value).error(e)),
        }
    }
    Ok(())
}

fn verify_bound222(flags: &Flags, out: &mut Vec<OutputRecord>) -> Usage<()> {
    let n_max = flags.n_max_or(30)?;
    for r in flags.shapes_or(&LEMMA22_SHAPES)? {
        for n in 0..=n_max {
            let base = check("bound222").input("r", r.value).input("n", n);
            out.push(record(base, |rec| {
                Ok(report(rec, &bound_222_check(r.value, n)?))
            }));
            let base = check("g-decrease").input("r", r.value).input("n", n);
            out.push(record(base, |rec| {
                Ok(report(rec, &g_decrease_check(r.value, n, G_SAMPLES)?))
            }));
        }
    }
    Ok(())
}

fn join(set: &std::collections::BTreeSet<u64>) -> String {
    set.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn verify_chvatal(flags: &Flags, out: &mut Vec<OutputRecord>) -> Usage<()> {
    let n_max = flags.n_max_or(30)?;
    for n in 2..=n_max {
        let base = check("chvatal-binomial").input("n", n);
        out.push(record(base, |rec| {
            let argmin = binomial_chvatal_argmin(n)?;
            let nearest = nearest_to_two_thirds(n);
            Ok(rec
                .output("argmin", join(&argmin))
                .output("nearest", join(&nearest))
                .passed(argmin.is_subset(&nearest)))
        }));
    }
    Ok(())
}

fn default_sweep_grid() -> Vec<Num> {
    (1..=SWEEP_POINTS)
        .map(|i| Num::from_exact(Rational::new(i.into(), SWEEP_POINTS.into())))
        .collect()
}

fn sweep(flags: &Flags) -> Usage<Vec<OutputRecord>> {
    let rs = flags.shapes_or(&SWEEP_SHAPES)?;
    let mut ps = flags.probs()?;
    if ps.is_empty() {
        ps = default_sweep_grid();
    }
    let mut out = Vec::new();
    for r in &rs {
        let mut best: Option<(f64, f64)> = None;
        for p in &ps {
            let base = OutputRecord::new("sweep")
                .input("r", r.value)
                .input("p", p.value);
            out.push(record(base, |rec| {
                let index = mean_interval_index_rational(&r.exact, &p.exact)?;
                let v = mean_tail_prob_rational(&r.exact, &p.exact)?.value();
                if best.is_none_or(|(min, _)| v < min) {
                    best = Some((v, p.value));
                }
                Ok(rec.output("n", index.n()).output("mean_tail_prob", v))
            }));
        }
        let base = OutputRecord::new("sweep-summary")
            .input("r", r.value)
            .input("points", ps.len() as u64);
        out.push(record(base, |rec| {
            let inf = global_infimum(r.value)?.value;
            let rec = rec.output("infimum", inf);
            Ok(match best {
                Some((min, argmin)) => rec
                    .output("grid_min", min)
                    .output("argmin_p", argmin)
                    .output("margin", min - inf)
                    .passed(min > inf),
                None => rec.passed(false),
            })
        }));
    }
    Ok(out)
}

fn sample(flags: &Flags) -> Usage<Vec<OutputRecord>> {
    let (rs, ps, ns) = (
        flags.require_shapes()?,
        flags.require_probs()?,
        flags.counts()?,
    );
    let seed = flags.seed()?;
    let mut out = Vec::new();
    for r in &rs {
        for p in &ps {
            let base = OutputRecord::new("sample")
                .input("r", r.value)
                .input("p", p.value)
                .input("seed", seed);
            if ns.is_empty() {
                let draws = flags.draws_or(10)?;
                match SampleStream::new(r.value, p.value, seed) {
                    Ok(stream) => {
                        for (i, x) in (0..draws).zip(stream) {
                            out.push(base.clone().input("index", i).output("x", x));
                        }
                    }
                    Err(e) => out.push(base.error(e)),
                }
                continue;
            }
            let draws = flags.draws_or(100_000)?;
            for &n in &ns {
                let base = base.clone().input("n", n).input("draws", draws);
                out.push(record(base, |rec| {
                    let est = mc_cdf_estimate(r.value, p.value, n, draws, seed)?;
                    let params = NBParams::new(r.value, p.value)?;
                    let exact = if n <= MAX_DIRECT_TERMS {
                        nb_cdf_sum(params, n)
                    } else {
                        nb_cdf_beta(params, n)?
                    }
                    .value();
                    Ok(rec
                        .output("estimate", est.estimate)
                        .output("std_error", est.std_error)
                        .output("cdf", exact))
                }));
            }
        }
    }
    Ok(out)
}
