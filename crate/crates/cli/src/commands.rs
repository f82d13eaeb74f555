//! One function per subcommand; each returns a deterministic artifact
//! (identical configs give byte-identical output, independent of thread
//! count).

use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use dlhecke_core::coxeter::chars::char_table;
use dlhecke_core::dlchar::{
    dudas_malle_certificate, duality_check, duality_check_mono, tr_identity_check, NMatrix,
    SqrtChoice,
};
use dlhecke_core::dlchar::weights::chosen_sqrt;
use dlhecke_core::hecke::kl::KLTable;
use dlhecke_core::mono::{MonoBlock, MonoKLTable};
use dlhecke_core::torus::{
    characters, fixed_torus, geometric_classes, FrobeniusDatum, SeriesTable,
};
use dlhecke_core::{ElemId, Error, ExecMode, WeylGroup};

use crate::cache;
use crate::files;
use crate::render::{laurent_value, uniform_value, Artifact};
use crate::words::{parse_word, render_word};

fn mode() -> ExecMode {
    ExecMode::default()
}

pub fn group(g: &Arc<WeylGroup>) -> Artifact {
    let mut elements = Vec::new();
    let mut rows = Vec::new();
    for w in g.elements() {
        let left: Vec<u64> = mask_bits(g.left_descents(w));
        let right: Vec<u64> = mask_bits(g.right_descents(w));
        elements.push(json!({
            "word": render_word(g, w),
            "length": g.length(w),
            "left_descents": left.clone(),
            "right_descents": right.clone(),
            "inverse": render_word(g, g.invert(w)),
        }));
        rows.push(vec![
            render_word(g, w),
            g.length(w).to_string(),
            format!("{left:?}"),
            format!("{right:?}"),
            render_word(g, g.invert(w)),
        ]);
    }
    let bruhat: Vec<String> = g
        .elements()
        .map(|w| {
            g.elements()
                .map(|y| if g.bruhat_leq(y, w) { '1' } else { '0' })
                .collect()
        })
        .collect();
    let json = json!({
        "label": g.datum().label(),
        "order": g.order(),
        "longest": render_word(g, g.longest()),
        "elements": elements,
        "bruhat": bruhat,
    });
    Artifact {
        json,
        table_header: ["word", "length", "left_descents", "right_descents", "inverse"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        table_rows: rows,
    }
}

fn mask_bits(mask: u32) -> Vec<u64> {
    (0..32)
        .filter(|s| mask >> s & 1 == 1)
        .map(|s| s as u64 + 1)
        .collect()
}

fn kl_rows_value(g: &Arc<WeylGroup>, table: &KLTable) -> Value {
    let mut rows = Vec::new();
    for w in g.elements() {
        for (y, p) in table.row(w) {
            rows.push(json!({
                "type": "kl",
                "w": render_word(g, w),
                "y": render_word(g, *y),
                "h": laurent_value(p),
                "h_tilde": laurent_value(&table.h_tilde(*y, w)),
            }));
        }
    }
    Value::Array(rows)
}

pub fn kl(g: &Arc<WeylGroup>, w: Option<&str>, verify: bool) -> Result<Artifact, Error> {
    let rows_value = match cache::load(g) {
        Some(v) if !verify => v,
        _ => {
            let table = KLTable::compute(g, mode());
            if verify {
                let oracle = KLTable::compute_bar_solve(g, mode());
                if !table.rows_equal(&oracle) {
                    return Err(Error::IdentityViolation(
                        "the recursion and the bar-solve disagree".into(),
                    ));
                }
            }
            let v = kl_rows_value(g, &table);
            cache::store(g, &v);
            v
        }
    };

    let filter_w = w.map(|text| parse_word(g, text)).transpose()?;
    let rows: Vec<Value> = rows_value
        .as_array()
        .expect("rows array")
        .iter()
        .filter(|row| match filter_w {
            None => true,
            Some(w) => row["w"].as_str() == Some(render_word(g, w).as_str()),
        })
        .cloned()
        .collect();

    let table_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r["w"].as_str().unwrap_or("").to_string(),
                r["y"].as_str().unwrap_or("").to_string(),
                serde_json::to_string(&r["h"]).unwrap(),
                serde_json::to_string(&r["h_tilde"]).unwrap(),
            ]
        })
        .collect();
    let json = json!({
        "label": g.datum().label(),
        "rows": rows,
    });
    Ok(Artifact {
        json,
        table_header: ["w", "y", "h", "h_tilde"].iter().map(|s| s.to_string()).collect(),
        table_rows,
    })
}

pub fn torus(
    g: &Arc<WeylGroup>,
    q: u64,
    w: Option<&str>,
    delta: Option<u32>,
) -> Result<Artifact, Error> {
    let fd = FrobeniusDatum::new(g, q, delta)?;
    let filter_w = w.map(|text| parse_word(g, text)).transpose()?;
    let mut tori = Vec::new();
    let mut rows = Vec::new();
    for w in g.elements() {
        if let Some(only) = filter_w {
            if w != only {
                continue;
            }
        }
        let t = fixed_torus(g, w, &fd)?;
        let chars = characters(&t);
        let tuples: Vec<Vec<u64>> = chars.iter().map(|c| c.tuple.clone()).collect();
        tori.push(json!({
            "w": render_word(g, w),
            "invariants": t.invariants,
            "order": t.order(),
            "num_characters": chars.len(),
            "characters": tuples,
        }));
        rows.push(vec![
            render_word(g, w),
            format!("{:?}", t.invariants),
            t.order().to_string(),
            chars.len().to_string(),
        ]);
    }
    let json = json!({
        "label": g.datum().label(),
        "q": q,
        "delta": fd.delta,
        "tori": tori,
    });
    Ok(Artifact {
        json,
        table_header: ["w", "invariants", "order", "num_characters"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        table_rows: rows,
    })
}

fn series_table(g: &Arc<WeylGroup>, q: u64, delta: Option<u32>) -> Result<(FrobeniusDatum, SeriesTable), Error> {
    let fd = FrobeniusDatum::new(g, q, delta)?;
    let table = geometric_classes(g, &fd)?;
    Ok((fd, table))
}

pub fn series(g: &Arc<WeylGroup>, q: u64, delta: Option<u32>) -> Result<Artifact, Error> {
    let (fd, table) = series_table(g, q, delta)?;
    let mut classes = Vec::new();
    let mut rows = Vec::new();
    for (id, class) in table.classes.iter().enumerate() {
        let members: Vec<Value> = class
            .members
            .iter()
            .map(|(w, chi)| json!([render_word(g, *w), chi.tuple]))
            .collect();
        classes.push(json!({
            "id": id,
            "rep": {"den": class.rep.den, "nums": class.rep.nums},
            "orbit_size": class.orbit.len(),
            "members": members,
        }));
        rows.push(vec![
            id.to_string(),
            format!("{:?}/{}", class.rep.nums, class.rep.den),
            class.orbit.len().to_string(),
            class.members.len().to_string(),
        ]);
    }
    let mut orders = Map::new();
    for w in g.elements() {
        let t = fixed_torus(g, w, &fd)?;
        orders.insert(render_word(g, w), Value::from(t.order()));
    }
    let json = json!({
        "label": g.datum().label(),
        "q": q,
        "delta": fd.delta,
        "num_classes": table.classes.len(),
        "classes": classes,
        "torus_orders": orders,
    });
    Ok(Artifact {
        json,
        table_header: ["id", "rep", "orbit_size", "num_members"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        table_rows: rows,
    })
}

fn block_of_class(
    g: &Arc<WeylGroup>,
    table: &SeriesTable,
    id: usize,
) -> Result<Arc<MonoBlock>, Error> {
    let class = table
        .classes
        .get(id)
        .ok_or_else(|| Error::InvalidDatum(format!("class id {id} out of range")))?;
    Ok(MonoBlock::build(g, class))
}

fn unipotent_class_id(table: &SeriesTable) -> usize {
    table
        .classes
        .iter()
        .position(|c| c.rep.is_trivial())
        .expect("the unipotent class always exists")
}

pub fn monokl(
    g: &Arc<WeylGroup>,
    q: u64,
    class: Option<usize>,
    all_classes: bool,
    delta: Option<u32>,
) -> Result<Artifact, Error> {
    let (_, table) = series_table(g, q, delta)?;
    let ids: Vec<usize> = if all_classes {
        (0..table.classes.len()).collect()
    } else {
        vec![class.unwrap_or_else(|| unipotent_class_id(&table))]
    };
    let mut blocks = Vec::new();
    let mut rows = Vec::new();
    for id in ids {
        let block = block_of_class(g, &table, id)?;
        let kl = MonoKLTable::compute(&block, mode());
        let mut block_rows = Vec::new();
        for idx @ (w, c) in block.basis() {
            let chi = &block.orbit()[c];
            for ((y, cy), p) in kl.row(idx) {
                let chi_y = &block.orbit()[*cy];
                block_rows.push(json!({
                    "w": render_word(g, w),
                    "chi": {"den": chi.den, "nums": chi.nums},
                    "y": render_word(g, *y),
                    "chi_y": {"den": chi_y.den, "nums": chi_y.nums},
                    "h": laurent_value(p),
                    "h_tilde": laurent_value(&kl.row_tilde(idx).get(&(*y, *cy)).cloned().unwrap_or_default()),
                }));
                rows.push(vec![
                    id.to_string(),
                    render_word(g, w),
                    format!("{:?}/{}", chi.nums, chi.den),
                    render_word(g, *y),
                    format!("{:?}/{}", chi_y.nums, chi_y.den),
                ]);
            }
        }
        blocks.push(json!({
            "class": id,
            "rep": {"den": block.orbit()[0].den.clone(), "nums": block.orbit()[0].nums.clone()},
            "basis_size": block.basis_size(),
            "rows": block_rows,
        }));
    }
    let json = json!({
        "label": g.datum().label(),
        "q": q,
        "blocks": blocks,
    });
    Ok(Artifact {
        json,
        table_header: ["class", "w", "chi", "y", "chi_y"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        table_rows: rows,
    })
}

pub fn duality(
    g: &Arc<WeylGroup>,
    w: Option<&str>,
    class: Option<usize>,
    q: Option<u64>,
    conjectural: bool,
    inject_sign_error: bool,
) -> Result<(Artifact, bool), Error> {
    let filter_w = w.map(|text| parse_word(g, text)).transpose()?;
    let mut rows_json = Vec::new();
    let mut rows = Vec::new();
    let mut any_fail = false;

    if let Some(id) = class {
        let q = q.ok_or_else(|| {
            Error::InvalidDatum("--class requires --q to locate the block".into())
        })?;
        let (_, table) = series_table(g, q, None)?;
        let block = block_of_class(g, &table, id)?;
        let kl = MonoKLTable::compute(&block, mode());
        for idx @ (w, c) in block.basis() {
            if let Some(only) = filter_w {
                if w != only {
                    continue;
                }
            }
            let sign = duality_check_mono(&block, &kl, idx, conjectural)?;
            let expect = if g.length(w) % 2 == 1 { -1 } else { 1 };
            let mut pass = sign == expect;
            if inject_sign_error && rows_json.is_empty() {
                pass = false;
            }
            any_fail |= !pass;
            let chi = &block.orbit()[c];
            rows_json.push(json!({
                "w": render_word(g, w),
                "chi": {"den": chi.den, "nums": chi.nums},
                "length": g.length(w),
                "sign": sign,
                "pass": pass,
            }));
            rows.push(vec![
                render_word(g, w),
                format!("{:?}/{}", chi.nums, chi.den),
                sign.to_string(),
                pass.to_string(),
            ]);
        }
    } else {
        let table = KLTable::compute(g, mode());
        for w in g.elements() {
            if let Some(only) = filter_w {
                if w != only {
                    continue;
                }
            }
            let sign = duality_check(&table, w)?;
            let expect = if g.length(w) % 2 == 1 { -1 } else { 1 };
            let mut pass = sign == expect;
            if inject_sign_error && rows_json.is_empty() {
                pass = false;
            }
            any_fail |= !pass;
            rows_json.push(json!({
                "w": render_word(g, w),
                "length": g.length(w),
                "sign": sign,
                "pass": pass,
            }));
            rows.push(vec![
                render_word(g, w),
                g.length(w).to_string(),
                sign.to_string(),
                pass.to_string(),
            ]);
        }
    }

    let json = json!({
        "label": g.datum().label(),
        "rows": rows_json,
    });
    Ok((
        Artifact {
            json,
            table_header: if class.is_some() {
                ["w", "chi", "sign", "pass"].iter().map(|s| s.to_string()).collect()
            } else {
                ["w", "length", "sign", "pass"].iter().map(|s| s.to_string()).collect()
            },
            table_rows: rows,
        },
        any_fail,
    ))
}

pub fn trcheck(
    g: &Arc<WeylGroup>,
    w: Option<&str>,
    inject_sign_error: bool,
) -> Result<(Artifact, bool), Error> {
    let ct = char_table(g)?;
    let table = KLTable::compute(g, mode());
    let filter_w = w.map(|text| parse_word(g, text)).transpose()?;
    let mut rows_json = Vec::new();
    let mut rows = Vec::new();
    let mut any_fail = false;
    for w in g.elements() {
        if let Some(only) = filter_w {
            if w != only {
                continue;
            }
        }
        let report = tr_identity_check(&table, &ct, w)?;
        let mut pass = report.pass;
        if inject_sign_error && rows_json.is_empty() {
            pass = false;
        }
        any_fail |= !pass;
        let lhs: Vec<String> = report.lhs.iter().map(|x| x.to_string()).collect();
        let rhs: Vec<String> = report.rhs.iter().map(|x| x.to_string()).collect();
        rows_json.push(json!({
            "w": render_word(g, w),
            "sign": report.sign,
            "lhs": lhs,
            "rhs": rhs,
            "pass": pass,
        }));
        rows.push(vec![
            render_word(g, w),
            report.sign.to_string(),
            pass.to_string(),
        ]);
    }
    let class_words: Vec<String> = ct
        .classes
        .iter()
        .map(|c| render_word(g, ElemId(c[0])))
        .collect();
    let json = json!({
        "label": g.datum().label(),
        "class_representatives": class_words,
        "rows": rows_json,
    });
    Ok((
        Artifact {
            json,
            table_header: ["w", "sign", "pass"].iter().map(|s| s.to_string()).collect(),
            table_rows: rows,
        },
        any_fail,
    ))
}

#[allow(clippy::too_many_arguments)]
pub fn dudasmalle(
    g: &Arc<WeylGroup>,
    q: u64,
    l: u64,
    w: Option<&str>,
    delta: Option<u32>,
    sqrt_choice: SqrtChoice,
    n_matrix: Option<&Path>,
) -> Result<(Artifact, bool), Error> {
    let fd = FrobeniusDatum::new(g, q, delta)?;
    let n = match n_matrix {
        Some(path) => files::load_n_matrix(g, path)?,
        None => NMatrix::empty(),
    };
    let table = KLTable::compute(g, mode());
    let filter_w = w.map(|text| parse_word(g, text)).transpose()?;
    let sqrt = chosen_sqrt(q, l, sqrt_choice)?;

    let mut results = Vec::new();
    let mut rows = Vec::new();
    let mut any_fail = false;
    for w in g.elements() {
        if let Some(only) = filter_w {
            if w != only {
                continue;
            }
        }
        let certs =
            dudas_malle_certificate(g, &table, w, q, l, fd.p, fd.delta, sqrt_choice, &n)?;
        let mut classes = Vec::new();
        for c in &certs {
            any_fail |= !c.pass;
            classes.push(json!({
                "lambda_bar_id": c.residue,
                "lambda": [c.lambda_rep.0, c.lambda_rep.1],
                "ic_component": uniform_value(&c.ic_component),
                "dual": uniform_value(&c.dual_component),
                "tilt_component": uniform_value(&c.tilt_component),
                "tilt_lambda_bar_id": c.tilt_residue,
                "sign": c.sign,
                "pass": c.pass,
                "diff": c.diff.as_ref().map(uniform_value),
            }));
            rows.push(vec![
                render_word(g, w),
                q.to_string(),
                l.to_string(),
                c.residue.to_string(),
                c.sign.to_string(),
                c.pass.to_string(),
            ]);
        }
        results.push(json!({
            "w": render_word(g, w),
            "q": q,
            "l": l,
            "sqrt_choice": match sqrt_choice {
                SqrtChoice::Canonical => "canonical",
                SqrtChoice::Other => "other",
            },
            "classes": classes,
        }));
    }
    let json = json!({
        "label": g.datum().label(),
        "q": q,
        "l": l,
        "delta": fd.delta,
        "sqrt": [sqrt.rep().0, sqrt.rep().1],
        "sqrt_extension_degree": sqrt.extension_degree(),
        "certificates": results,
    });
    Ok((
        Artifact {
            json,
            table_header: ["w", "q", "l", "lambda_bar_id", "sign", "pass"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            table_rows: rows,
        },
        any_fail,
    ))
}
