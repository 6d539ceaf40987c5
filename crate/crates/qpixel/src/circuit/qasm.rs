use std::io::Write;

use crate::error::CircuitError;

use super::{Circuit, Gate};

/// Formats like C's `%.17g`: 17 significant digits, trailing zeros trimmed.
pub fn format_angle(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    const PRECISION: i32 = 17;
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();

    if !(-4..PRECISION).contains(&exp) {
        let frac = digits[1..].trim_end_matches('0');
        let exp_str = format!("{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
        if frac.is_empty() {
            format!("{sign}{}e{exp_str}", &digits[..1])
        } else {
            format!("{sign}{}.{frac}e{exp_str}", &digits[..1])
        }
    } else if exp >= 0 {
        let split = (exp + 1) as usize;
        let (int, frac) = digits.split_at(split);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        let frac = format!("{zeros}{digits}");
        format!("{sign}0.{}", frac.trim_end_matches('0'))
    }
}

/// Writes an OPENQASM 2.0 program (`h`, `x`, `ry`, `cx` on a single `q` register).
pub fn emit_qasm<W: Write>(c: &Circuit, out: &mut W) -> Result<(), CircuitError> {
    if c.gates().iter().any(|g| matches!(g, Gate::Mcry { .. })) {
        return Err(CircuitError::McryNotExportable);
    }
    writeln!(out, "OPENQASM 2.0;")?;
    writeln!(out, "include \"qelib1.inc\";")?;
    writeln!(out, "qreg q[{}];", c.num_qubits())?;
    for g in c.gates() {
        match g {
            Gate::H { target } => writeln!(out, "h q[{target}];")?,
            Gate::X { target } => writeln!(out, "x q[{target}];")?,
            Gate::Ry { target, angle } => {
                writeln!(out, "ry({}) q[{target}];", format_angle(*angle))?
            }
            Gate::Cnot { control, target } => writeln!(out, "cx q[{control}],q[{target}];")?,
            Gate::Mcry { .. } => unreachable!("rejected above"),
        }
    }
    Ok(())
}

pub fn to_qasm(c: &Circuit) -> Result<String, CircuitError> {
    let mut buf = Vec::new();
    emit_qasm(c, &mut buf)?;
    Ok(String::from_utf8(buf).expect("QASM output is ASCII"))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::circuit::Control;

    #[test]
    fn percent_g_formatting() {
        assert_eq!(format_angle(PI), "3.1415926535897931");
        assert_eq!(format_angle(-PI / 4.0), "-0.78539816339744828");
        assert_eq!(format_angle(0.5), "0.5");
        assert_eq!(format_angle(2.0), "2");
        assert_eq!(format_angle(0.0), "0");
        assert_eq!(format_angle(1e-5), "1.0000000000000001e-05");
        assert_eq!(format_angle(0.0001), "0.0001");
        assert_eq!(format_angle(1e20), "1e+20");
        assert_eq!(format_angle(123.25), "123.25");
    }

    #[test]
    fn formatted_angles_parse_back_exactly() {
        for x in [
            PI,
            PI / 3.0,
            -1.0 / 7.0,
            2.0f64.sqrt() * 1e-7,
            6.02e23,
            f64::MIN_POSITIVE,
        ] {
            assert_eq!(format_angle(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn single_gates() {
        let mut c = Circuit::new(2);
        c.push(Gate::Ry {
            target: 0,
            angle: PI,
        })
        .unwrap();
        c.push(Gate::H { target: 0 }).unwrap();
        c.push(Gate::X { target: 1 }).unwrap();
        c.push(Gate::Cnot {
            control: 0,
            target: 1,
        })
        .unwrap();
        let text = to_qasm(&c).unwrap();
        assert_eq!(
            text,
            "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nry(3.1415926535897931) q[0];\nh q[0];\nx q[1];\ncx q[0],q[1];\n"
        );
    }

    #[test]
    fn mcry_is_rejected() {
        let mut c = Circuit::new(2);
        c.push(Gate::Mcry {
            controls: vec![Control {
                qubit: 0,
                positive: true,
            }],
            target: 1,
            angle: 1.0,
        })
        .unwrap();
        assert!(matches!(to_qasm(&c), Err(CircuitError::McryNotExportable)));
    }
}
