//! JSON rendering of results, with every ring value written as a string in
//! the text grammar, and readers that parse it back.

use std::sync::Arc;

use num_rational::BigRational;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::enumeration::{parse_dmax, EnumeratedForm, EnumerationReport};
use crate::error::{Error, Result};
use crate::forms::{parse_orientation, ProjForm};
use crate::membership::{DecisionResult, Token};
use crate::moebius::{HeckeGroup, ProjMatrix};
use crate::reduction::ReductionResult;
use crate::ring::{parse_ring_int, parse_ring_rat, RingContext};

impl Serialize for ProjMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ProjMatrix", 4)?;
        st.serialize_field("a", &self.a().to_string())?;
        st.serialize_field("b", &self.b().to_string())?;
        st.serialize_field("c", &self.c().to_string())?;
        st.serialize_field("d", &self.d().to_string())?;
        st.end()
    }
}

impl Serialize for ProjForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ProjForm", 4)?;
        st.serialize_field("A", &self.a().to_string())?;
        st.serialize_field("B", &self.b().to_string())?;
        st.serialize_field("C", &self.c().to_string())?;
        st.serialize_field("s", self.orientation().symbol())?;
        st.end()
    }
}

impl Serialize for Token {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for DecisionResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DecisionResult", 4)?;
        st.serialize_field("member", &self.member)?;
        st.serialize_field("word", &self.word)?;
        st.serialize_field("iterations", &self.iterations)?;
        st.serialize_field("bound", &self.bound)?;
        st.end()
    }
}

impl Serialize for ReductionResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ReductionResult", 6)?;
        st.serialize_field("level", &self.level)?;
        st.serialize_field("preperiod", &self.preperiod)?;
        st.serialize_field("period", &self.period)?;
        st.serialize_field("conjugator", &self.conjugator)?;
        st.serialize_field("period_word", &self.period_word)?;
        st.serialize_field("hyperbolic_element", &self.hyperbolic_element)?;
        st.end()
    }
}

struct Forms<'a>(&'a [EnumeratedForm]);

impl Serialize for Forms<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for f in self.0 {
            seq.serialize_element(&serde_json::json!({
                "form": f.form,
                "word": f.word,
                "discriminant": f.discriminant.to_string(),
            }))?;
        }
        seq.end()
    }
}

fn rational_text(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl Serialize for EnumerationReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("EnumerationReport", 4)?;
        st.serialize_field("dmax", &rational_text(&self.dmax))?;
        st.serialize_field("word_length_cap", &self.word_length_cap)?;
        st.serialize_field("forms", &Forms(&self.forms))?;
        st.serialize_field("explored", &self.explored)?;
        st.end()
    }
}

fn field<'v>(v: &'v Value, name: &str) -> Result<&'v Value> {
    v.get(name)
        .ok_or_else(|| Error::parse(name, "missing field"))
}

fn str_field<'v>(v: &'v Value, name: &str) -> Result<&'v str> {
    field(v, name)?
        .as_str()
        .ok_or_else(|| Error::parse(name, "expected a string"))
}

fn u64_field(v: &Value, name: &str) -> Result<u64> {
    field(v, name)?
        .as_u64()
        .ok_or_else(|| Error::parse(name, "expected a nonnegative integer"))
}

fn array<'v>(v: &'v Value, name: &str) -> Result<&'v Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(name, "expected an array"))
}

pub fn matrix_from_json(ctx: &Arc<RingContext>, v: &Value) -> Result<ProjMatrix> {
    let e = |n| parse_ring_rat(ctx, str_field(v, n)?);
    ProjMatrix::new(e("a")?, e("b")?, e("c")?, e("d")?)
}

pub fn form_from_json(ctx: &Arc<RingContext>, v: &Value) -> Result<ProjForm> {
    let e = |n| parse_ring_int(ctx, str_field(v, n)?);
    ProjForm::new(e("A")?, e("B")?, e("C")?, parse_orientation(str_field(v, "s")?)?)
}

fn indices(v: &Value, name: &str) -> Result<Vec<u32>> {
    array(v, name)?
        .iter()
        .map(|k| {
            k.as_u64()
                .and_then(|k| u32::try_from(k).ok())
                .ok_or_else(|| Error::parse(k.to_string(), "expected a generator index"))
        })
        .collect()
}

fn forms(ctx: &Arc<RingContext>, v: &Value, name: &str) -> Result<Vec<ProjForm>> {
    array(v, name)?.iter().map(|f| form_from_json(ctx, f)).collect()
}

pub fn decision_from_json(v: &Value) -> Result<DecisionResult> {
    let word = match field(v, "word")? {
        Value::Null => None,
        w => Some(
            array(w, "word")?
                .iter()
                .map(|t| {
                    t.as_str()
                        .ok_or_else(|| Error::parse(t.to_string(), "expected a token string"))
                        .and_then(Token::parse)
                })
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    Ok(DecisionResult {
        member: field(v, "member")?
            .as_bool()
            .ok_or_else(|| Error::parse("member", "expected a boolean"))?,
        word,
        iterations: u64_field(v, "iterations")?,
        bound: u64_field(v, "bound")?,
    })
}

pub fn reduction_from_json(group: &HeckeGroup, v: &Value) -> Result<ReductionResult> {
    let ctx = group.ctx();
    let period_word = indices(field(v, "period_word")?, "period_word")?;
    let primitive = period_word.iter().try_fold(group.identity(), |acc, &k| {
        Token::GInv(k).matrix(group).map(|g| acc.compose(&g))
    })?;
    Ok(ReductionResult {
        level: u64_field(v, "level")?,
        preperiod: forms(ctx, field(v, "preperiod")?, "preperiod")?,
        period: forms(ctx, field(v, "period")?, "period")?,
        conjugator: matrix_from_json(ctx, field(v, "conjugator")?)?,
        period_word,
        primitive,
        hyperbolic_element: matrix_from_json(ctx, field(v, "hyperbolic_element")?)?,
    })
}

pub fn report_from_json(ctx: &Arc<RingContext>, v: &Value) -> Result<EnumerationReport> {
    let entries = array(field(v, "forms")?, "forms")?
        .iter()
        .map(|f| {
            Ok(EnumeratedForm {
                form: form_from_json(ctx, field(f, "form")?)?,
                word: indices(field(f, "word")?, "word")?,
                discriminant: parse_ring_int(ctx, str_field(f, "discriminant")?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EnumerationReport {
        dmax: parse_dmax(str_field(v, "dmax")?)?,
        word_length_cap: u64_field(v, "word_length_cap")? as usize,
        forms: entries,
        explored: u64_field(v, "explored")?,
    })
}
