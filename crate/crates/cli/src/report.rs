//! The document printed by every subcommand, in JSON and in a line-oriented
//! text form. Both encodings carry the same data and parse back.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use ktate_core::bg::{BgReport, Identity};
use ktate_core::borel::{BorelResult, Method, Side};
use ktate_core::grmod::{Decomposition, ModuleSymbol};
use ktate_core::resolve::{GradedAbelianGroup, GroupPiece};
use ktate_core::tate::TateResult;
use ktate_core::{BigInt, RatFn};

use crate::verify::{Suite, VerifyReport};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Request {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<(i64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub of: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<ModuleSymbol>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<ModuleSymbol>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Borel(BorelResult),
    Tate(TateResult),
    Groups(GradedAbelianGroup),
    Bg(Vec<BgReport>),
    Verify(VerifyReport),
}

impl Payload {
    fn to_value(&self) -> serde_json::Result<Value> {
        match self {
            Payload::Borel(x) => serde_json::to_value(x),
            Payload::Tate(x) => serde_json::to_value(x),
            Payload::Groups(x) => serde_json::to_value(x),
            Payload::Bg(x) => serde_json::to_value(x),
            Payload::Verify(x) => serde_json::to_value(x),
        }
    }

    fn from_value(command: &str, v: Value) -> Result<Self, String> {
        let e = |e: serde_json::Error| e.to_string();
        Ok(match command {
            "borel-homology" | "borel-cohomology" => Payload::Borel(serde_json::from_value(v).map_err(e)?),
            "tate" => Payload::Tate(serde_json::from_value(v).map_err(e)?),
            "homotopy" | "tor" => Payload::Groups(serde_json::from_value(v).map_err(e)?),
            "bg-check" => Payload::Bg(serde_json::from_value(v).map_err(e)?),
            "verify-all" => Payload::Verify(serde_json::from_value(v).map_err(e)?),
            other => return Err(format!("unknown command {other:?}")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub request: Request,
    pub result: Payload,
    pub version: String,
    /// Every number in the report was computed in exact integer arithmetic.
    pub exact: bool,
}

impl Report {
    pub fn new(request: Request, result: Payload) -> Self {
        Self {
            request,
            result,
            version: VERSION.to_string(),
            exact: true,
        }
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        let v = serde_json::json!({
            "request": self.request,
            "result": self.result.to_value()?,
            "version": self.version,
            "exact": self.exact,
        });
        serde_json::to_string_pretty(&v)
    }

    pub fn from_json(s: &str) -> Result<Self, String> {
        let mut v: Value = serde_json::from_str(s).map_err(|e| e.to_string())?;
        let request: Request = serde_json::from_value(v["request"].take()).map_err(|e| e.to_string())?;
        let result = Payload::from_value(&request.command, v["result"].take())?;
        let version = v["version"].as_str().ok_or("missing version")?.to_string();
        let exact = v["exact"].as_bool().ok_or("missing exact flag")?;
        Ok(Self {
            request,
            result,
            version,
            exact,
        })
    }

    pub fn to_text(&self) -> String {
        let q = &self.request;
        let mut out = format!("ktate {}\nexact: {}\ncommand: {}\n", self.version, self.exact, q.command);
        let mut line = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                out.push_str(&format!("{k}: {v}\n"));
            }
        };
        line("p", q.p.map(|x| x.to_string()));
        line("n", q.n.map(|x| x.to_string()));
        line("degrees", q.degrees.map(|(lo, hi)| format!("{lo}:{hi}")));
        line("method", q.method.clone());
        line("of", q.of.clone());
        line("reduced", q.reduced.map(|x| x.to_string()));
        line("a", q.a.map(|x| x.code()));
        line("b", q.b.map(|x| x.code()));
        line("j", q.j.map(|x| x.to_string()));
        line("r", q.r.map(|x| x.to_string()));
        line("r_max", q.r_max.map(|x| x.to_string()));
        line("p_max", q.p_max.map(|x| x.to_string()));
        line("n_max", q.n_max.map(|x| x.to_string()));
        out.push_str("---\n");
        out.push_str(&payload_text(&self.result));
        out
    }

    pub fn from_text(s: &str) -> Result<Self, String> {
        let (head, body) = s.split_once("\n---\n").ok_or("missing --- separator")?;
        let mut lines = head.lines();
        let version = lines
            .next()
            .and_then(|l| l.strip_prefix("ktate "))
            .ok_or("missing version line")?
            .to_string();
        let mut q = Request::default();
        let mut exact = None;
        for l in lines {
            let (k, v) = kv(l)?;
            let num = |v: &str| v.parse::<u32>().map_err(|e| format!("{k}: {e}"));
            match k {
                "exact" => exact = Some(v == "true"),
                "command" => q.command = v.to_string(),
                "p" => q.p = Some(num(v)?),
                "n" => q.n = Some(num(v)?),
                "degrees" => q.degrees = Some(parse_window(v)?),
                "method" => q.method = Some(v.to_string()),
                "of" => q.of = Some(v.to_string()),
                "reduced" => q.reduced = Some(v == "true"),
                "a" => q.a = Some(ModuleSymbol::from_code(v).map_err(|e| e.to_string())?),
                "b" => q.b = Some(ModuleSymbol::from_code(v).map_err(|e| e.to_string())?),
                "j" => q.j = Some(num(v)? as usize),
                "r" => q.r = Some(num(v)?),
                "r_max" => q.r_max = Some(num(v)?),
                "p_max" => q.p_max = Some(num(v)?),
                "n_max" => q.n_max = Some(num(v)?),
                other => return Err(format!("unknown header {other:?}")),
            }
        }
        let result = parse_payload(&q.command, body)?;
        Ok(Self {
            request: q,
            result,
            version,
            exact: exact.ok_or("missing exact line")?,
        })
    }
}

fn kv(l: &str) -> Result<(&str, &str), String> {
    l.split_once(':')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| format!("expected `key: value`, got {l:?}"))
}

/// `lo:hi`.
pub fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo = lo.trim().parse().map_err(|_| format!("bad lower bound in {s:?}"))?;
    let hi = hi.trim().parse().map_err(|_| format!("bad upper bound in {s:?}"))?;
    Ok((lo, hi))
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Homology => "homology",
        Side::Cohomology => "cohomology",
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Recursive => "recursive",
        Method::ClosedForm => "closed_form",
    }
}

fn groups_text(g: &GradedAbelianGroup) -> String {
    let (lo, hi) = g.window();
    format!("window: {lo}:{hi}\n{g}")
}

fn payload_text(p: &Payload) -> String {
    match p {
        Payload::Borel(b) => format!(
            "side: {}\nmethod: {}\nn: {}\n{}",
            side_name(b.side),
            method_name(b.method),
            b.n,
            b.decomposition.to_text()
        ),
        Payload::Tate(t) => format!(
            "prime: {}\nn: {}\nq_multiplicity: {}\nf_hom: {}\nf_coh: {}\n",
            t.prime, t.n, t.q_multiplicity, t.f_hom, t.f_coh
        ),
        Payload::Groups(g) => groups_text(g),
        Payload::Bg(reports) => {
            let mut out = String::new();
            for r in reports {
                out.push_str(&format!(
                    "r: {}\nsum: {}\nclosed: {}\nours: {}\n",
                    r.r, r.sum, r.closed, r.ours
                ));
                for id in &r.all_identities {
                    out.push_str(&format!("identity {}: {}\n", id.name, if id.holds { "holds" } else { "FAILS" }));
                }
            }
            out
        }
        Payload::Verify(v) => {
            let mut out = String::new();
            for s in &v.suites {
                out.push_str(&format!(
                    "suite {}: {} ({} checks)\n",
                    s.name,
                    if s.passed { "pass" } else { "FAIL" },
                    s.checks
                ));
                for f in &s.failures {
                    out.push_str(&format!("  failure: {f}\n"));
                }
            }
            out
        }
    }
}

fn parse_piece(s: &str) -> Result<GroupPiece, String> {
    let mut piece = GroupPiece::default();
    if s == "0" {
        return Ok(piece);
    }
    for part in s.split(" + ") {
        if let Some(order) = part.strip_prefix("Z/") {
            piece.torsion.push(order.parse::<BigInt>().map_err(|e| e.to_string())?);
        } else if let Some(k) = part.strip_prefix("Z^") {
            piece.free += k.parse::<usize>().map_err(|e| e.to_string())?;
        } else if part == "Z" {
            piece.free += 1;
        } else {
            return Err(format!("bad group summand {part:?}"));
        }
    }
    piece.torsion.sort();
    Ok(piece)
}

fn parse_groups(body: &str) -> Result<GradedAbelianGroup, String> {
    let mut lines = body.lines();
    let (k, v) = kv(lines.next().ok_or("empty group listing")?)?;
    if k != "window" {
        return Err("expected window line".into());
    }
    let (lo, hi) = parse_window(v)?;
    let mut g = GradedAbelianGroup::zero(lo, hi);
    for l in lines {
        let (d, piece) = kv(l)?;
        let d: i64 = d.parse().map_err(|_| format!("bad degree {d:?}"))?;
        g.set(d, parse_piece(piece)?);
    }
    Ok(g)
}

fn rf(s: &str) -> Result<RatFn, String> {
    s.parse().map_err(|e: ktate_core::Error| e.to_string())
}

fn parse_payload(command: &str, body: &str) -> Result<Payload, String> {
    match command {
        "borel-homology" | "borel-cohomology" => {
            let mut lines = body.lines();
            let mut field = |name: &str| -> Result<String, String> {
                let (k, v) = kv(lines.next().ok_or("truncated result")?)?;
                if k != name {
                    return Err(format!("expected {name}, got {k}"));
                }
                Ok(v.to_string())
            };
            let side = match field("side")?.as_str() {
                "homology" => Side::Homology,
                "cohomology" => Side::Cohomology,
                s => return Err(format!("bad side {s:?}")),
            };
            let method = match field("method")?.as_str() {
                "recursive" => Method::Recursive,
                "closed_form" => Method::ClosedForm,
                s => return Err(format!("bad method {s:?}")),
            };
            let n = field("n")?.parse().map_err(|_| "bad n")?;
            let rest: Vec<&str> = lines.collect();
            let decomposition = Decomposition::from_text(&rest.join("\n")).map_err(|e| e.to_string())?;
            Ok(Payload::Borel(BorelResult {
                side,
                method,
                n,
                decomposition,
            }))
        }
        "tate" => {
            let mut t = TateResult {
                prime: 0,
                n: 0,
                q_multiplicity: RatFn::zero(),
                f_hom: RatFn::zero(),
                f_coh: RatFn::zero(),
            };
            for l in body.lines() {
                let (k, v) = kv(l)?;
                match k {
                    "prime" => t.prime = v.parse().map_err(|_| "bad prime")?,
                    "n" => t.n = v.parse().map_err(|_| "bad n")?,
                    "q_multiplicity" => t.q_multiplicity = rf(v)?,
                    "f_hom" => t.f_hom = rf(v)?,
                    "f_coh" => t.f_coh = rf(v)?,
                    other => return Err(format!("unknown field {other:?}")),
                }
            }
            Ok(Payload::Tate(t))
        }
        "homotopy" | "tor" => Ok(Payload::Groups(parse_groups(body)?)),
        "bg-check" => {
            let mut out: Vec<BgReport> = Vec::new();
            for l in body.lines() {
                let (k, v) = kv(l)?;
                if let Some(name) = k.strip_prefix("identity ") {
                    let last = out.last_mut().ok_or("identity before r")?;
                    last.all_identities.push(Identity {
                        name: name.to_string(),
                        holds: v == "holds",
                    });
                    continue;
                }
                match k {
                    "r" => out.push(BgReport {
                        r: v.parse().map_err(|_| "bad r")?,
                        sum: RatFn::zero(),
                        closed: RatFn::zero(),
                        ours: RatFn::zero(),
                        all_identities: vec![],
                    }),
                    "sum" | "closed" | "ours" => {
                        let last = out.last_mut().ok_or("field before r")?;
                        let slot = match k {
                            "sum" => &mut last.sum,
                            "closed" => &mut last.closed,
                            _ => &mut last.ours,
                        };
                        *slot = rf(v)?;
                    }
                    other => return Err(format!("unknown field {other:?}")),
                }
            }
            Ok(Payload::Bg(out))
        }
        "verify-all" => {
            let mut suites: Vec<Suite> = Vec::new();
            for l in body.lines() {
                if let Some(f) = l.strip_prefix("  failure: ") {
                    suites.last_mut().ok_or("failure before suite")?.failures.push(f.to_string());
                    continue;
                }
                let rest = l.strip_prefix("suite ").ok_or_else(|| format!("bad line {l:?}"))?;
                let (name, status) = rest.split_once(": ").ok_or("bad suite line")?;
                let (verdict, checks) = status.split_once(" (").ok_or("bad suite line")?;
                let checks = checks
                    .strip_suffix(" checks)")
                    .and_then(|c| c.parse().ok())
                    .ok_or("bad check count")?;
                suites.push(Suite {
                    name: name.to_string(),
                    passed: verdict == "pass",
                    checks,
                    failures: vec![],
                });
            }
            Ok(Payload::Verify(VerifyReport { suites }))
        }
        other => Err(format!("unknown command {other:?}")),
    }
}
