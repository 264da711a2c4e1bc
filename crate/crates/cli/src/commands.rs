use serde::Serialize;

use beauville_core::beauville::{
    all_figures, real_via, scheme_figure, sigma, transform, verify_triple, Automorphism, Family, Regime,
    Transform,
};
use beauville_core::cache;
use beauville_core::groups::{check_hom_extends, enumerate_g, estimated_log2_order, ladder_from_group};
use beauville_core::tables::{FORBIDDEN_IMAGE_PAIRS, PSI_IMAGES};
use beauville_core::words::Word;
use beauville_core::{BeauvilleReport, BeauvilleTriple, GeneratorSet, Spherical, SurfaceRow, VerifyOptions};

use crate::output::{csv_rows, json, subscript, yes_no, Timer};
use crate::{Cli, Format};

/// Refuses levels whose expected group order is over the budget, before
/// any enumeration starts.
fn check_budget(k: usize, budget: usize) -> anyhow::Result<()> {
    if let Some(e) = estimated_log2_order(k) {
        if e >= usize::BITS || (1usize << e) > budget {
            anyhow::bail!(
                "G_{k} is expected to have 2^{e} elements, over the budget of {budget}; raise --budget"
            );
        }
    }
    Ok(())
}

fn triple(cli: &Cli, k: usize) -> anyhow::Result<BeauvilleTriple> {
    check_budget(k, cli.budget)?;
    Ok(BeauvilleTriple::standard_cached(k, cli.budget, cli.cache_dir.as_deref())?)
}

#[derive(Serialize)]
struct VerifyCsv {
    k: usize,
    order_g: usize,
    order_h: usize,
    sigma_t: usize,
    a: bool,
    b: bool,
    b_intersection: usize,
    c: bool,
    c_leading: bool,
    bprime: Option<bool>,
    xk_in_intersection: Option<bool>,
    xk_equals_yk: Option<bool>,
    beauville: bool,
    matches_expected_pattern: bool,
}

fn verify_text(r: &BeauvilleReport) {
    let k = r.k;
    println!(
        "level {k}: |G| = {}, |H| = {}, |Σ(T)| = {}",
        r.order_g, r.order_h, r.sigma_t_size
    );
    println!("  (A) x0, x1 generate H: {}", yes_no(r.condition_a));
    let b = &r.condition_b;
    if b.verdict {
        println!("  (B) g0 = x2: holds");
    } else {
        let w = b.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
        println!(
            "  (B) g0 = x2: fails, {} elements in the intersection, witness {w}",
            b.intersection_size
        );
    }
    if let Some(tp) = &r.two_power {
        println!(
            "      x^{k} = {} in the intersection: {}; x^{k} = y^{k}: {}",
            tp.xk,
            yes_no(tp.xk_in_intersection),
            yes_no(tp.xk_equals_yk)
        );
    }
    println!(
        "  (C) no square of G \\ H in Σ(T): {}; leading-diagonal argument: {}",
        if r.condition_c { "holds" } else { "fails" },
        if r.condition_c_leading { "confirms" } else { "inconclusive" }
    );
    if let Some(bp) = &r.condition_bprime {
        println!(
            "  (B') over all of G \\ H: {} ({} of {} conjugators fail)",
            if bp.verdict { "holds" } else { "fails" },
            bp.failing,
            bp.coset_size
        );
    }
    if let Some(inv) = &r.invariants {
        println!(
            "  S(u): g = {}, e = {}, χ = {}, K² = {}",
            inv.genus, inv.euler, inv.chi, inv.k_squared
        );
    }
    let verdict = match (r.is_beauville(), r.matches_expected_pattern) {
        (true, _) => "mixed Beauville structure",
        (false, true) => "not Beauville; (B) fails as expected at a power of two",
        (false, false) => "not Beauville; unexpected",
    };
    println!("  verdict: {verdict}");
}

pub fn verify(cli: &Cli, ks: &[usize], bprime: bool) -> anyhow::Result<bool> {
    let opts = VerifyOptions {
        budget: cli.budget,
        bprime,
        cache_dir: cli.cache_dir.clone(),
        ..Default::default()
    };
    for &k in ks {
        check_budget(k, cli.budget)?;
    }
    let mut reports = Vec::with_capacity(ks.len());
    for &k in ks {
        let timer = Timer::new(cli.timings);
        let u = triple(cli, k)?;
        let r = verify_triple(&u, &opts)?;
        timer.report(&format!("verify k={k}"));
        if cli.format == Format::Text {
            verify_text(&r);
        }
        reports.push(r);
    }
    match cli.format {
        Format::Text => {}
        Format::Json if reports.len() == 1 => json(&reports[0])?,
        Format::Json => json(&reports)?,
        Format::Csv => {
            let rows: Vec<VerifyCsv> = reports
                .iter()
                .map(|r| VerifyCsv {
                    k: r.k,
                    order_g: r.order_g,
                    order_h: r.order_h,
                    sigma_t: r.sigma_t_size,
                    a: r.condition_a,
                    b: r.condition_b.verdict,
                    b_intersection: r.condition_b.intersection_size,
                    c: r.condition_c,
                    c_leading: r.condition_c_leading,
                    bprime: r.condition_bprime.as_ref().map(|b| b.verdict),
                    xk_in_intersection: r.two_power.as_ref().map(|t| t.xk_in_intersection),
                    xk_equals_yk: r.two_power.as_ref().map(|t| t.xk_equals_yk),
                    beauville: r.is_beauville(),
                    matches_expected_pattern: r.matches_expected_pattern,
                })
                .collect();
            csv_rows(&rows)?;
        }
    }
    Ok(reports.iter().all(|r| r.matches_expected_pattern))
}

pub fn orders(cli: &Cli, k_max: usize) -> anyhow::Result<bool> {
    if k_max == 0 {
        anyhow::bail!("--k-max must be at least 1");
    }
    let top = k_max + 1;
    check_budget(top, cli.budget)?;
    let timer = Timer::new(cli.timings);
    let gs = GeneratorSet::new(top)?;
    let g = match &cli.cache_dir {
        Some(dir) => cache::load_or_build(dir, "G", top, &gs.g_generators(), || enumerate_g(&gs, cli.budget))?,
        None => enumerate_g(&gs, cli.budget)?,
    };
    let rows = ladder_from_group(&g);
    timer.report(&format!("enumerate G_{top}"));
    match cli.format {
        Format::Text => {
            println!("{:>3}  {:>12}  {:>6}  {:>5}", "k", "|G_k|", "log2", "ratio");
            for r in &rows {
                println!("{:>3}  {:>12}  {:>6}  {:>5}", r.k, r.order, r.order.trailing_zeros(), r.ratio);
            }
        }
        Format::Json => json(&rows)?,
        Format::Csv => csv_rows(&rows)?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct PowerCsv {
    generator: Spherical,
    k: usize,
    n: u64,
    t: u64,
    form: Option<usize>,
    vanish: Option<usize>,
    a1: Option<String>,
    a2: Option<String>,
    matches: bool,
}

pub fn powers(cli: &Cli, gen: Option<Spherical>, k: usize) -> anyhow::Result<bool> {
    let gens: Vec<Spherical> = gen.map_or_else(|| Spherical::ALL.to_vec(), |g| vec![g]);
    let timer = Timer::new(cli.timings);
    let reports = gens
        .iter()
        .map(|&g| beauville_core::beauville::verify_power_forms(g, k))
        .collect::<Result<Vec<_>, _>>()?;
    timer.report("powers");
    match cli.format {
        Format::Text => {
            for (i, rep) in reports.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                println!("powers of {} at level {}, order {}", rep.generator, rep.k, rep.order);
                println!("{:>4}  {:>4}  {:>5}  {:>6}  {:<16}  {:<16}  match", "n", "t(n)", "form", "vanish", "A1", "A2");
                for r in &rep.rows {
                    let form = r.form.map_or("id".to_string(), |f| (f + 1).to_string());
                    let (v, a1, a2) = match &r.observed {
                        Some(lp) => (lp.vanish.to_string(), lp.a1.to_string(), lp.a2.to_string()),
                        None => ("-".into(), "-".into(), "-".into()),
                    };
                    println!(
                        "{:>4}  {:>4}  {:>5}  {:>6}  {:<16}  {:<16}  {}",
                        r.n,
                        r.t,
                        form,
                        v,
                        a1,
                        a2,
                        yes_no(r.matches)
                    );
                }
                for tp in &rep.two_powers {
                    let alt = tp.alternative.map_or("-".to_string(), |a| a.to_string());
                    println!(
                        "  {}^(2^{}): {} vanishing diagonals; 2^r - 1 = {}; 2^(r-2) + 1 = {alt}",
                        rep.generator, tp.r, tp.observed, tp.minus_one
                    );
                }
            }
        }
        Format::Json if reports.len() == 1 => json(&reports[0])?,
        Format::Json => json(&reports)?,
        Format::Csv => {
            let rows: Vec<PowerCsv> = reports
                .iter()
                .flat_map(|rep| {
                    rep.rows.iter().map(move |r| PowerCsv {
                        generator: rep.generator,
                        k: rep.k,
                        n: r.n,
                        t: r.t,
                        form: r.form.map(|f| f + 1),
                        vanish: r.observed.as_ref().map(|lp| lp.vanish),
                        a1: r.observed.as_ref().map(|lp| lp.a1.to_string()),
                        a2: r.observed.as_ref().map(|lp| lp.a2.to_string()),
                        matches: r.matches,
                    })
                })
                .collect();
            csv_rows(&rows)?;
        }
    }
    Ok(reports.iter().all(|r| r.all_match()))
}

#[derive(Serialize)]
struct SchemeCsv {
    family: String,
    regime: &'static str,
    exponent: u64,
    side: &'static str,
    node: usize,
    vanish: usize,
    leading: String,
    second: String,
    matches_printed: bool,
}

pub fn schemes(cli: &Cli, pair: Option<Family>, regime: Option<Regime>) -> anyhow::Result<bool> {
    let figures = match (pair, regime) {
        (None, None) => all_figures()?,
        _ => {
            let fams = pair.map_or_else(|| Family::ALL.to_vec(), |p| vec![p]);
            let regs = regime.map_or_else(|| Regime::ALL.to_vec(), |r| vec![r]);
            let mut out = Vec::new();
            for &f in &fams {
                for &r in &regs {
                    out.push(scheme_figure(f, r)?);
                }
            }
            out
        }
    };
    match cli.format {
        Format::Text => {
            for (i, fig) in figures.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                println!("{} ({}), level {}", fig.family, fig.regime.name(), fig.level);
                print!("{fig}");
                println!(
                    "  agrees with full products: {}; matches published figure: {}",
                    yes_no(fig.generic_agrees),
                    yes_no(fig.matches_printed())
                );
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Entry<'a> {
                #[serde(flatten)]
                figure: &'a beauville_core::beauville::SchemeFigure,
                #[serde(rename = "matchesPrinted")]
                matches_printed: bool,
            }
            let entries: Vec<Entry> = figures
                .iter()
                .map(|f| Entry {
                    figure: f,
                    matches_printed: f.matches_printed(),
                })
                .collect();
            json(&entries)?;
        }
        Format::Csv => {
            let mut rows = Vec::new();
            for fig in &figures {
                for (side, s) in [("left", &fig.left), ("right", &fig.right)] {
                    for (node, t) in s.nodes.iter().enumerate() {
                        rows.push(SchemeCsv {
                            family: fig.family.to_string(),
                            regime: fig.regime.name(),
                            exponent: fig.exponent,
                            side,
                            node,
                            vanish: s.vanish,
                            leading: s.leading.to_string(),
                            second: t.to_string(),
                            matches_printed: fig.matches_printed(),
                        });
                    }
                }
            }
            csv_rows(&rows)?;
        }
    }
    Ok(figures.iter().all(|f| f.generic_agrees && f.matches_printed()))
}

pub fn surface(cli: &Cli, ks: &[usize]) -> anyhow::Result<bool> {
    for &k in ks {
        check_budget(k, cli.budget)?;
    }
    let mut rows: Vec<SurfaceRow> = Vec::with_capacity(ks.len());
    for &k in ks {
        let timer = Timer::new(cli.timings);
        let u = triple(cli, k)?;
        rows.push(beauville_core::surfaces::invariants_row(&u)?);
        timer.report(&format!("surface k={k}"));
    }
    match cli.format {
        Format::Text => {
            println!(
                "{:>3}  {:>10}  {:>10}  {:>6}  {:>6}  {:>6}  {:>8}  {:>10}  {:>10}  {:>10}  {:>10}",
                "k", "|G|", "|H|", "ord x0", "ord x1", "ord x", "ν", "g", "e", "χ", "K²"
            );
            for r in &rows {
                println!(
                    "{:>3}  {:>10}  {:>10}  {:>6}  {:>6}  {:>6}  {:>8}  {:>10}  {:>10}  {:>10}  {:>10}",
                    r.k, r.order_g, r.order_h, r.ord_x0, r.ord_x1, r.ord_x, r.nu, r.genus, r.euler, r.chi, r.k_squared
                );
            }
        }
        Format::Json if rows.len() == 1 => json(&rows[0])?,
        Format::Json => json(&rows)?,
        Format::Csv => csv_rows(&rows)?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct PsiCheck {
    automorphism: bool,
    #[serde(rename = "iotaEqualsSigmaPsi")]
    iota_equals_sigma_psi: bool,
    real: bool,
}

#[derive(Serialize)]
struct PairCheck {
    images: [&'static str; 2],
    extends: bool,
    bijective: bool,
}

#[derive(Serialize)]
struct HomReport {
    k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    psi: Option<PsiCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pairs: Vec<PairCheck>,
}

pub fn homcheck(cli: &Cli, k: usize, psi: bool, pairs: bool) -> anyhow::Result<bool> {
    let (psi, pairs) = if psi || pairs { (psi, pairs) } else { (true, true) };
    let u = triple(cli, k)?;
    let gs = GeneratorSet::new(k)?;
    let mut report = HomReport {
        k,
        psi: None,
        pairs: Vec::new(),
    };
    if psi {
        report.psi = Some(match Automorphism::from_words(u.g().clone(), &gs, &PSI_IMAGES) {
            Ok(a) => {
                let rho = transform(&u, &Transform::SigmaPsi(a.clone()))?;
                let iu = transform(&u, &Transform::Iota)?;
                PsiCheck {
                    automorphism: true,
                    iota_equals_sigma_psi: rho.same_as(&iu),
                    real: real_via(&u, &a)?,
                }
            }
            Err(beauville_core::Error::NotAutomorphism) => PsiCheck {
                automorphism: false,
                iota_equals_sigma_psi: false,
                real: false,
            },
            Err(e) => return Err(e.into()),
        });
    }
    if pairs {
        for (a, b) in FORBIDDEN_IMAGE_PAIRS {
            let images = [a, b]
                .iter()
                .map(|w| gs.eval(&w.parse::<Word>()?))
                .collect::<Result<Vec<_>, _>>()?;
            let v = check_hom_extends(u.h(), &images)?;
            report.pairs.push(PairCheck {
                images: [a, b],
                extends: v.extends,
                bijective: v.bijective,
            });
        }
    }
    match cli.format {
        Format::Text => {
            if let Some(p) = &report.psi {
                let s = subscript(k);
                println!(
                    "automorphism: {}; ι(u{s})=σ_ψ(u{s}): {}; S(u{s}) {}",
                    yes_no(p.automorphism),
                    yes_no(p.iota_equals_sigma_psi),
                    if p.real { "real" } else { "not shown real" }
                );
            }
            for p in &report.pairs {
                println!(
                    "(x0, x1) ↦ ({}, {}) on H: {}",
                    p.images[0],
                    p.images[1],
                    match (p.extends, p.bijective) {
                        (false, _) => "does not extend",
                        (true, true) => "extends to an automorphism",
                        (true, false) => "extends to a non-injective endomorphism",
                    }
                );
            }
        }
        Format::Json => json(&report)?,
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                check: String,
                extends: bool,
                bijective: bool,
            }
            let mut rows = Vec::new();
            if let Some(p) = &report.psi {
                rows.push(Row {
                    check: "psi".into(),
                    extends: p.automorphism,
                    bijective: p.automorphism,
                });
            }
            for p in &report.pairs {
                rows.push(Row {
                    check: format!("{},{}", p.images[0], p.images[1]),
                    extends: p.extends,
                    bijective: p.bijective,
                });
            }
            csv_rows(&rows)?;
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct SigmaRow {
    set: String,
    size: usize,
}

pub fn sigma_sizes(cli: &Cli, k: usize) -> anyhow::Result<bool> {
    let timer = Timer::new(cli.timings);
    let u = triple(cli, k)?;
    let gs = GeneratorSet::new(k)?;
    let sets = Spherical::ALL
        .iter()
        .map(|&s| Ok((s, sigma(&gs.spherical(s), u.h())?)))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for (s, set) in &sets {
        rows.push(SigmaRow {
            set: format!("Σ({s})"),
            size: set.len(),
        });
    }
    rows.push(SigmaRow {
        set: "Σ(T)".into(),
        size: u.sigma_t()?.union.len(),
    });
    for (a, sa) in &sets[..3] {
        for (b, sb) in &sets[3..] {
            rows.push(SigmaRow {
                set: format!("Σ({a}) ∩ Σ({b})"),
                size: sa.intersection(sb).len(),
            });
        }
    }
    timer.report(&format!("sigma k={k}"));
    match cli.format {
        Format::Text => {
            println!("level {k}, |H| = {}", u.h().order());
            for r in &rows {
                println!("  {:<16} {}", r.set, r.size);
            }
        }
        Format::Json => json(&rows)?,
        Format::Csv => csv_rows(&rows)?,
    }
    Ok(true)
}
