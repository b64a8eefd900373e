//! Report assembly: every subcommand produces one result object rendered
//! either as human-readable text or as JSON. Both renderings read the same
//! data, so the numbers always agree. JSON keys are emitted in sorted
//! order and all underlying computations are deterministic, which makes
//! the byte output independent of thread count.

use serde_json::{json, Value};

use moment_angle::complex::SimplicialComplex;
use moment_angle::duality::{theorem_b_report, TheoremBReport};
use moment_angle::error::{Error, Result};
use moment_angle::hochster::{all_subcomplex_betti, beta_zk_total, hochster_table, BigradedTable};
use moment_angle::homology::{betti_numbers, is_closed_homology_manifold, is_f_orientable};
use moment_angle::linalg::PrimeField;
use moment_angle::poset::{cochain_complex, double_homology, homology_functor};
use moment_angle::tightness::{
    check_all, direct_check, lemma_identity_check, theorem_a_check, theorem_a_bound, Method,
    MethodStatus, TightnessReport, Verdict,
};
use moment_angle::VertexSet;

pub struct Report {
    pub text: String,
    pub json: Value,
}

/// Shared header: complex shape, field, and the two gates.
pub struct Context {
    pub m: u32,
    pub dim: i32,
    pub f_vector: Vec<usize>,
    pub facet_count: usize,
    pub euler: i64,
    pub p: u32,
    pub homology_manifold: bool,
    pub orientable: bool,
}

pub fn context(k: &SimplicialComplex, field: PrimeField) -> Context {
    let homology_manifold = is_closed_homology_manifold(k, field);
    let orientable = is_f_orientable(k, field).unwrap_or(false);
    Context {
        m: k.m(),
        dim: k.dim(),
        f_vector: k.f_vector(),
        facet_count: k.facets().len(),
        euler: k.euler_characteristic(),
        p: field.p(),
        homology_manifold,
        orientable,
    }
}

pub fn wrap_json(ctx: &Context, result: Value) -> Value {
    json!({
        "complex": { "m": ctx.m, "dim": ctx.dim, "f_vector": ctx.f_vector },
        "field": { "p": ctx.p },
        "gates": {
            "homology_manifold": ctx.homology_manifold,
            "orientable": ctx.orientable,
        },
        "result": result,
    })
}

fn header_text(ctx: &Context) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "complex: m={}, dim={}, facets={}\n",
        ctx.m, ctx.dim, ctx.facet_count
    ));
    s.push_str(&format!("field: GF({})\n", ctx.p));
    s.push_str(&format!(
        "homology-manifold over GF({}): {}\n",
        ctx.p,
        yes_no(ctx.homology_manifold)
    ));
    s.push_str(&format!(
        "orientable over GF({}): {}\n",
        ctx.p,
        yes_no(ctx.orientable)
    ));
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn i128_value(v: i128) -> Value {
    if let Ok(n) = i64::try_from(v) {
        json!(n)
    } else {
        json!(v.to_string())
    }
}

fn vertex_list(j: VertexSet) -> Value {
    json!(j.vertices())
}

fn bigraded_json(t: &BigradedTable) -> Value {
    let rows: Vec<Value> = t.entries().map(|(&(k, l), &d)| json!([k, l, d])).collect();
    json!(rows)
}

fn bigraded_text(t: &BigradedTable) -> String {
    if t.total() == 0 {
        return "  (empty)\n".to_string();
    }
    let mut s = String::from("  k  l  dim   (bidegree (-k, 2l))\n");
    for (&(k, l), &d) in t.entries() {
        s.push_str(&format!("  {k}  {l}  {d}\n"));
    }
    s
}

pub fn info_report(ctx: &Context) -> Report {
    let mut text = header_text(ctx);
    text.push_str(&format!("f-vector: {:?}\n", ctx.f_vector));
    text.push_str(&format!("euler characteristic: {}\n", ctx.euler));
    let json = json!({
        "f_vector": ctx.f_vector,
        "dim": ctx.dim,
        "facet_count": ctx.facet_count,
        "euler": ctx.euler,
        "homology_manifold": ctx.homology_manifold,
        "orientable": ctx.orientable,
    });
    Report { text, json }
}

pub fn betti_report(
    ctx: &Context,
    k: &SimplicialComplex,
    field: PrimeField,
    subcomplex: Option<VertexSet>,
) -> Report {
    let (target, label) = match subcomplex {
        Some(j) => (k.full_subcomplex(j), format!("K_{{{}}}", join(&j.vertices()))),
        None => (k.clone(), "K".to_string()),
    };
    let betti = betti_numbers(&target, field, false);
    let nonzero = betti.nonzero();
    let mut text = header_text(ctx);
    text.push_str(&format!("betti numbers of {label} over GF({}) (unreduced):\n", ctx.p));
    if nonzero.is_empty() {
        text.push_str("  all zero\n");
    }
    for &(q, d) in &nonzero {
        text.push_str(&format!("  b_{q} = {d}\n"));
    }
    text.push_str(&format!("total: {}\n", betti.total()));
    let json = json!({
        "subcomplex": subcomplex.map(vertex_list),
        "betti": nonzero.iter().map(|&(q, d)| json!([q, d])).collect::<Vec<_>>(),
        "total": betti.total(),
    });
    Report { text, json }
}

fn join(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn hochster_report(
    ctx: &Context,
    k: &SimplicialComplex,
    field: PrimeField,
    m_cap: u32,
) -> Result<Report> {
    let cache = all_subcomplex_betti(k, field, m_cap)?;
    let table = hochster_table(&cache);
    let total = beta_zk_total(&cache);
    let beta_k = cache.unreduced(k.universe()).total();
    let bound = theorem_a_bound(k.m(), beta_k);
    let single = table.single_graded();
    let single_nonzero: Vec<(usize, usize)> =
        single.iter().enumerate().filter(|(_, &d)| d > 0).map(|(n, &d)| (n, d)).collect();

    let mut text = header_text(ctx);
    text.push_str(&format!("Hochster bigraded table of H*(Z_K) over GF({}):\n", ctx.p));
    text.push_str(&bigraded_text(&table));
    text.push_str("single-graded (n = 2l - k):\n");
    for &(n, d) in &single_nonzero {
        text.push_str(&format!("  b_{n}(Z_K) = {d}\n"));
    }
    text.push_str(&format!("beta(Z_K) = {total}\n"));
    text.push_str(&format!("bound 2^(m-1)*(beta(K)-2)+2 = {bound}\n"));
    text.push_str(&format!("equality (tight by total rank): {}\n", yes_no(total as i128 == bound)));

    let json = json!({
        "table": bigraded_json(&table),
        "single_graded": single_nonzero.iter().map(|&(n, d)| json!([n, d])).collect::<Vec<_>>(),
        "beta_zk": total,
        "beta_k": beta_k,
        "bound_rhs": i128_value(bound),
        "equality": total as i128 == bound,
    });
    Ok(Report { text, json })
}

fn method_status_json(status: &MethodStatus) -> Value {
    match status {
        MethodStatus::Ran(Verdict::Tight) => json!({"status": "TIGHT"}),
        MethodStatus::Ran(Verdict::NotTight) => json!({"status": "NOT_TIGHT"}),
        MethodStatus::Skipped(e) => json!({"status": "SKIPPED", "reason": e.to_string()}),
    }
}

fn tightness_json(rep: &TightnessReport) -> Value {
    let witnesses: Vec<Value> = rep
        .witnesses
        .iter()
        .map(|w| {
            let cycle = w.kernel_cycle.as_ref().map(|chain| {
                chain
                    .iter()
                    .map(|(face, coeff)| json!({"face": face.vertices(), "coeff": coeff}))
                    .collect::<Vec<_>>()
            });
            json!({
                "J": vertex_list(w.j),
                "q": w.q,
                "nullity": w.nullity,
                "kernel_cycle": cycle,
            })
        })
        .collect();
    let methods: Vec<Value> = rep
        .methods
        .iter()
        .map(|(m, s)| {
            let mut v = method_status_json(s);
            v["method"] = json!(m.name());
            v
        })
        .collect();
    json!({
        "verdict": match rep.verdict { Verdict::Tight => "TIGHT", Verdict::NotTight => "NOT_TIGHT" },
        "methods": methods,
        "witnesses": witnesses,
        "bound_lhs": rep.bound_lhs,
        "bound_rhs": i128_value(rep.bound_rhs),
    })
}

fn tightness_text(ctx: &Context, rep: &TightnessReport) -> String {
    let mut text = header_text(ctx);
    let verdict = match rep.verdict {
        Verdict::Tight => "TIGHT",
        Verdict::NotTight => "NOT_TIGHT",
    };
    text.push_str(&format!("tightness over GF({}): {verdict}\n", rep.p));
    for (m, s) in &rep.methods {
        match s {
            MethodStatus::Ran(Verdict::Tight) => text.push_str(&format!("  {}: TIGHT\n", m.name())),
            MethodStatus::Ran(Verdict::NotTight) => {
                text.push_str(&format!("  {}: NOT_TIGHT\n", m.name()))
            }
            MethodStatus::Skipped(e) => text.push_str(&format!("  {}: SKIPPED ({e})\n", m.name())),
        }
    }
    text.push_str(&format!("beta(Z_K) = {}, bound = {}\n", rep.bound_lhs, rep.bound_rhs));
    if rep.witnesses.is_empty() {
        text.push_str("witnesses: none\n");
    } else {
        text.push_str(&format!("witnesses ({}):\n", rep.witnesses.len()));
        for w in &rep.witnesses {
            let mut line = format!("  J={{{}}} q={} nullity={}", join(&w.j.vertices()), w.q, w.nullity);
            if let Some(cycle) = &w.kernel_cycle {
                let terms: Vec<String> = cycle
                    .iter()
                    .map(|(f, c)| format!("{c}*{{{}}}", join(&f.vertices())))
                    .collect();
                line.push_str(&format!(" cycle: {}", terms.join(" + ")));
            }
            line.push('\n');
            text.push_str(&line);
        }
    }
    text
}

pub fn tightness_report(
    ctx: &Context,
    k: &SimplicialComplex,
    field: PrimeField,
    m_cap: u32,
    method: Method,
) -> Result<Report> {
    let rep = match method {
        Method::Direct => direct_check(k, field, m_cap)?,
        Method::LemmaIdentity => lemma_identity_check(k, field, m_cap)?,
        Method::TheoremA => theorem_a_check(k, field, m_cap)?,
        Method::All => check_all(k, field, m_cap)?,
    };
    Ok(Report { text: tightness_text(ctx, &rep), json: tightness_json(&rep) })
}

pub fn double_report(
    ctx: &Context,
    k: &SimplicialComplex,
    field: PrimeField,
    m_cap: u32,
) -> Result<Report> {
    let dh = double_homology(k, field, m_cap)?;
    let mut h_tables: Vec<(i32, Vec<usize>)> = Vec::new();
    for q in 0..=k.dim() {
        let dims = cochain_complex(&homology_functor(k, q, field, false))?.cohomology_dims();
        h_tables.push((q, dims));
    }

    let mut text = header_text(ctx);
    text.push_str(&format!("double homology DH(Z_K) over GF({}):\n", ctx.p));
    text.push_str(&bigraded_text(&dh));
    text.push_str(&format!("total: {}\n", dh.total()));
    text.push_str("poset cohomology H^l(H_q(K_-)) (unreduced), nonzero entries:\n");
    let mut any = false;
    for (q, dims) in &h_tables {
        for (l, &d) in dims.iter().enumerate() {
            if d > 0 {
                text.push_str(&format!("  q={q} l={l}: {d}\n"));
                any = true;
            }
        }
    }
    if !any {
        text.push_str("  (none)\n");
    }

    let json = json!({
        "dh": bigraded_json(&dh),
        "dh_total": dh.total(),
        "h_of_hq": h_tables
            .iter()
            .map(|(q, dims)| json!({"q": q, "dims": dims}))
            .collect::<Vec<_>>(),
    });
    Ok(Report { text, json })
}

fn duality_json(rep: &TheoremBReport) -> Value {
    json!({
        "n": rep.n,
        "overall": if rep.overall { "EQUAL" } else { "NOT_EQUAL" },
        "tight": rep.tight,
        "rows": rep
            .rows
            .iter()
            .map(|r| json!({"q": r.q, "lhs": r.lhs, "rhs": r.rhs, "equal": r.equal}))
            .collect::<Vec<_>>(),
    })
}

pub fn duality_report(
    ctx: &Context,
    k: &SimplicialComplex,
    field: PrimeField,
    m_cap: u32,
) -> Result<Report> {
    let rep = theorem_b_report(k, field, m_cap)?;
    let mut text = header_text(ctx);
    text.push_str(&format!(
        "rank duality H^l(H_q(K_-)) = H^(l-1)(H^(n-q)(K_-c)) over GF({}), n={}: {}\n",
        rep.p,
        rep.n,
        if rep.overall { "EQUAL" } else { "NOT_EQUAL" }
    ));
    text.push_str(&format!(
        "direct tightness sweep: {}\n",
        if rep.tight { "TIGHT" } else { "NOT_TIGHT (report is informational)" }
    ));
    for row in &rep.rows {
        let lhs: Vec<String> = row
            .lhs
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(l, &d)| format!("l={l}:{d}"))
            .collect();
        let rhs: Vec<String> = row
            .rhs
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(l, &d)| format!("l={l}:{d}"))
            .collect();
        text.push_str(&format!(
            "  q={}: lhs [{}]  rhs [{}]  equal: {}\n",
            row.q,
            lhs.join(", "),
            rhs.join(", "),
            yes_no(row.equal)
        ));
    }
    Ok(Report { text, json: duality_json(&rep) })
}

/// Exit code classification shared by `main`.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::NotAManifold { .. } | Error::NotOrientable { .. } | Error::NotPure => 1,
        Error::InternalInconsistency(_) => 3,
        _ => 2,
    }
}
