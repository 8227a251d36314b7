//! JSON output with a fixed float format.
//!
//! Every `f64` is written as `{:.16e}` (17 significant digits), which round-trips
//! exactly and makes repeated runs byte-identical.

use std::io;

use multipoint_core::Complex64;
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

/// Complex number as `[re, im]`.
pub type JsonComplex = [f64; 2];

pub fn cx(z: Complex64) -> JsonComplex {
    [z.re, z.im]
}

pub fn cvec(v: &[Complex64]) -> Vec<JsonComplex> {
    v.iter().map(|&z| cx(z)).collect()
}

pub fn from_cx(z: JsonComplex) -> Complex64 {
    Complex64::new(z[0], z[1])
}

pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Pretty printer that writes floats with 17 significant digits.
struct FixedFloats {
    inner: PrettyFormatter<'static>,
}

impl Formatter for FixedFloats {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            w.write_all(format_f64(value).as_bytes())
        } else {
            w.write_all(b"null")
        }
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_value(w)
    }
}

/// Serialize `value` as pretty JSON with fixed float formatting and a trailing newline.
pub fn to_string<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloats { inner: PrettyFormatter::with_indent(b"  ") });
    value.serialize(&mut ser).expect("in-memory serialization");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON is UTF-8")
}
