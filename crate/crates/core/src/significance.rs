use std::fmt;

/// Rejection band at the conventional 10/5/1% levels, rendered as stars.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Significance {
    None,
    Ten,
    Five,
    One,
}

impl Significance {
    /// Band of a two-sided (or already one-sided) p-value.
    pub fn from_p_value(p: f64) -> Self {
        if p < 0.01 {
            Significance::One
        } else if p < 0.05 {
            Significance::Five
        } else if p < 0.10 {
            Significance::Ten
        } else {
            Significance::None
        }
    }

    /// Band of a left-tailed statistic against `[1%, 5%, 10%]` critical values.
    pub fn from_left_tail(stat: f64, critical: [f64; 3]) -> Self {
        if stat < critical[0] {
            Significance::One
        } else if stat < critical[1] {
            Significance::Five
        } else if stat < critical[2] {
            Significance::Ten
        } else {
            Significance::None
        }
    }

    pub fn stars(self) -> &'static str {
        match self {
            Significance::None => "",
            Significance::Ten => "*",
            Significance::Five => "**",
            Significance::One => "***",
        }
    }

    pub fn rejects_at_5(self) -> bool {
        self >= Significance::Five
    }
}

impl fmt::Display for Significance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Significance::None => "none",
            Significance::Ten => "10%",
            Significance::Five => "5%",
            Significance::One => "1%",
        })
    }
}
