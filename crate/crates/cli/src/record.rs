//! Exported records and the three output formats.
//!
//! JSON records look like
//! `{"group":{"kind":"elem2","p":3,"k":2},"phi":[[1,0],[0,1]],"psi":[[2,0],[0,2]],"c":[0,0],"simple":false,"case":"..."}`.
//! Matrices are row-major. Over `Z_{p^k}` the automorphisms are written as
//! 1×1 matrices and `c` as a one-element list; for `Z_p^2` the `k` field is the
//! dimension 2 and `c` is the vector `[x, y]`.

use paramedial::affine::{AffineForm, Automorphism, Element, GroupDescriptor};
use paramedial::modring::{Mat2, Modulus, Unit, Vec2};
use paramedial::{enumerate_cyclic, enumerate_gl2, Error};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub kind: String,
    pub p: u64,
    pub k: u32,
}

impl GroupRecord {
    pub fn of(g: GroupDescriptor) -> Self {
        match g {
            GroupDescriptor::Cyclic(m) => GroupRecord {
                kind: "cyclic".into(),
                p: m.p(),
                k: m.k(),
            },
            GroupDescriptor::ElemAbelian2(m) => GroupRecord {
                kind: "elem2".into(),
                p: m.p(),
                k: 2,
            },
        }
    }

    pub fn descriptor(&self) -> Result<GroupDescriptor, Error> {
        match (self.kind.as_str(), self.k) {
            ("cyclic", k) => GroupDescriptor::cyclic(self.p, k),
            ("elem2", 2) => GroupDescriptor::elem2(self.p),
            (kind, k) => Err(Error::KindMismatch(format!(
                "unknown group {kind} with k = {k}"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormRecord {
    pub group: GroupRecord,
    pub phi: Vec<Vec<u64>>,
    pub psi: Vec<Vec<u64>>,
    pub c: Vec<u64>,
    pub simple: bool,
    pub case: String,
}

impl FormRecord {
    pub fn new(form: &AffineForm, simple: bool, case: String) -> Self {
        let c = match form.c() {
            Element::Cyclic(r) => vec![r.value()],
            Element::Plane(v) => v.to_array().to_vec(),
        };
        FormRecord {
            group: GroupRecord::of(form.group()),
            phi: form.phi().rows(),
            psi: form.psi().rows(),
            c,
            simple,
            case,
        }
    }

    /// Rebuild the form, re-validating every field.
    pub fn to_form(&self) -> Result<AffineForm, Error> {
        let g = self.group.descriptor()?;
        let m = g.modulus();
        let bad = |what: &str| Error::KindMismatch(format!("{what} has the wrong shape for {g}"));
        match g {
            GroupDescriptor::Cyclic(_) => {
                let unit = |rows: &[Vec<u64>], what: &str| match rows {
                    [row] if row.len() == 1 => {
                        Unit::new(m.residue(row[0] as i64)).map(Automorphism::Scalar)
                    }
                    _ => Err(bad(what)),
                };
                let [c] = self.c[..] else {
                    return Err(bad("c"));
                };
                AffineForm::new(
                    g,
                    unit(&self.phi, "phi")?,
                    unit(&self.psi, "psi")?,
                    Element::Cyclic(m.residue(c as i64)),
                )
            }
            GroupDescriptor::ElemAbelian2(_) => {
                let [x, y] = self.c[..] else {
                    return Err(bad("c"));
                };
                AffineForm::plane(
                    matrix(&self.phi, m).ok_or_else(|| bad("phi"))?,
                    matrix(&self.psi, m).ok_or_else(|| bad("psi"))?,
                    Vec2::new(x as i64, y as i64, m),
                )
            }
        }
    }
}

fn matrix(rows: &[Vec<u64>], m: Modulus) -> Option<Mat2> {
    match rows {
        [r0, r1] if r0.len() == 2 && r1.len() == 2 => Some(Mat2::new(
            [[r0[0] as i64, r0[1] as i64], [r1[0] as i64, r1[1] as i64]],
            m,
        )),
        _ => None,
    }
}

/// Every class representative over `g`, in enumeration order.
pub fn enumerate(
    g: GroupDescriptor,
    simple_only: bool,
) -> Result<Vec<(AffineForm, FormRecord)>, Error> {
    let all: Vec<(AffineForm, FormRecord)> = match g {
        GroupDescriptor::Cyclic(m) => enumerate_cyclic(m)
            .classes
            .into_iter()
            .map(|cl| {
                let rec = FormRecord::new(&cl.form, cl.form.is_simple(), cl.case);
                (cl.form, rec)
            })
            .collect(),
        GroupDescriptor::ElemAbelian2(m) => enumerate_gl2(m)?
            .rows
            .iter()
            .flat_map(|row| {
                row.forms()
                    .map(move |f| (f, FormRecord::new(&f, row.simple, row.case.label())))
            })
            .collect(),
    };
    Ok(all
        .into_iter()
        .filter(|(_, r)| !simple_only || r.simple)
        .collect())
}

fn matrix_text(rows: &[Vec<u64>]) -> String {
    let rows: Vec<String> = rows
        .iter()
        .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
        .collect();
    format!("({})", rows.join(";"))
}

pub fn to_json(records: &[FormRecord]) -> String {
    let mut out = serde_json::to_string_pretty(records).expect("records serialize");
    out.push('\n');
    out
}

pub fn from_json(text: &str) -> Result<Vec<FormRecord>, serde_json::Error> {
    serde_json::from_str(text)
}

/// Columns: group, phi, psi, c, simple, case.
pub fn to_csv(records: &[FormRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["group", "phi", "psi", "c", "simple", "case"])
        .expect("in-memory write");
    for r in records {
        let group = r
            .group
            .descriptor()
            .map(|g| g.to_string())
            .unwrap_or_default();
        let c: Vec<String> = r.c.iter().map(u64::to_string).collect();
        w.write_record([
            group,
            matrix_text(&r.phi),
            matrix_text(&r.psi),
            format!("({})", c.join(",")),
            r.simple.to_string(),
            r.case.clone(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

/// One `# form` header per table, then the table text.
pub fn to_tables(forms: &[AffineForm]) -> String {
    let mut out = String::new();
    for (i, f) in forms.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("# {f}\n"));
        out.push_str(&f.materialize().to_text());
    }
    out
}
