#![allow(dead_code)]

//! Printed polynomials used as golden fixtures, in LaTeX form.

pub const GL2_G2: &str = "q^9-2 q^8-2 q^7+11 q^6-18 q^5+17 q^4-8 q^3-q^2+3 q-1";
pub const GL2_G3: &str = "q^{17}-5 q^{16}+6 q^{15}+11 q^{14}-34 q^{13}+29 q^{12}-34 q^{11}+124 q^{10}-230 q^9 \
+204 q^8-74 q^7-q^6-14 q^5+29 q^4-10 q^3-6 q^2+5 q-1";

pub const PGL2_G2: &str = "2 q^6+q^5-4 q^4+3 q^3-4 q^2+2";
pub const PGL2_G3: &str = "2 q^{12}-8 q^{10}+q^9+12 q^8+10 q^7-28 q^6+5 q^5+12 q^4-8 q^2+2";
pub const PGL2_G4: &str = "2 q^{18}-12 q^{16}+30 q^{14}+q^{13}-40 q^{12}+21 q^{11}-12 q^{10}+35 q^9-12 q^8+7 q^7\
-40 q^6+30 q^4-12 q^2+2";

pub const PGL3_G2: &str = "3 q^{16}-6 q^{14}-5 q^{13}+q^{12}+13 q^{11}+17 q^{10}-33 q^9+23 q^8-29 q^7+8 q^6\
+15 q^5+2 q^4-6 q^3-6 q^2+3";
pub const PGL3_G3: &str = "3 q^{32}-12 q^{30}-12 q^{29}+18 q^{28}+48 q^{27}+6 q^{26}-71 q^{25}-74 q^{24}\
+42 q^{23}+131 q^{22}-53 q^{21}+52 q^{20}-104 q^{19}+57 q^{18}-261 q^{17}+446 q^{16}-156 q^{15}-23 q^{14}\
-129 q^{13}+62 q^{12}-34 q^{11}+114 q^{10}+41 q^9-70 q^8-72 q^7+6 q^6+48 q^5+18 q^4-12 q^3-12 q^2+3";

/// Strips whitespace so line breaks inside long fixtures do not matter.
pub fn squash(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

/// Converts the LaTeX form into the plain grammar: `q^{12}` to `q^12`, and
/// `2 q^6` to `2*q^6`.
pub fn latex_to_plain(s: &str) -> String {
    let mut out = String::new();
    let mut prev_digit = false;
    for c in s.chars() {
        match c {
            '{' | '}' => {}
            ' ' => {}
            'q' if prev_digit => out.push_str("*q"),
            _ => out.push(c),
        }
        prev_digit = c.is_ascii_digit() || (c == ' ' && prev_digit);
    }
    out
}
