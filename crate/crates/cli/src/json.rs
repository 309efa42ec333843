//! JSON output with fixed key order and 17 significant digits for floats.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter, Serializer};

/// Pretty-printing formatter that writes every float as `d.dddddddddddddddde±x`.
struct SeventeenDigits<'a> {
    inner: PrettyFormatter<'a>,
}

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*)),* $(,)?) => {
        $(
            fn $name<W: ?Sized + io::Write>(&mut self, writer: &mut W $(, $arg: $ty)*) -> io::Result<()> {
                self.inner.$name(writer $(, $arg)*)
            }
        )*
    };
}

impl Formatter for SeventeenDigits<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            // Normalizes -0.0 to 0.0.
            write!(writer, "{:.16e}", value + 0.0)
        } else {
            writer.write_all(b"null")
        }
    }

    delegate!(
        begin_array(),
        end_array(),
        begin_array_value(first: bool),
        end_array_value(),
        begin_object(),
        end_object(),
        begin_object_key(first: bool),
        begin_object_value(),
        end_object_value(),
    );
}

pub fn to_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let formatter = SeventeenDigits {
        inner: PrettyFormatter::with_indent(b"  "),
    };
    let mut ser = Serializer::with_formatter(&mut out, formatter);
    value
        .serialize(&mut ser)
        .expect("report types always serialize");
    String::from_utf8(out).expect("serde_json writes UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Sample {
        b: f64,
        a: [f64; 2],
        c: Option<f64>,
    }

    #[test]
    fn floats_have_seventeen_significant_digits_and_keys_keep_order() {
        let s = to_string(&Sample {
            b: -0.5,
            a: [1.0 / 3.0, -0.0],
            c: Some(f64::NAN),
        });
        assert_eq!(
            s,
            "{\n  \"b\": -5.0000000000000000e-1,\n  \"a\": [\n    3.3333333333333331e-1,\n    0.0000000000000000e0\n  ],\n  \"c\": null\n}"
        );
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["b"], -0.5);
    }
}
