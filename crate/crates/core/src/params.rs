//! Key=value parameter records used by the family catalog and the CLI.
//!
//! Records parse from comma-separated `key=value` text. Values are decimal
//! doubles; complex values are written `re,im`, so a bare token without `=`
//! is folded into the previous key as an imaginary part:
//! `q=0.5,a=1,0` parses to `q = 0.5`, `a = 1 + 0i`.

use crate::error::Error;
use crate::Result;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params {
    entries: BTreeMap<String, String>,
}

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: &str, value: &str) -> &mut Self {
        self.entries.insert(key.to_string(), value.to_string());
        self
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: BTreeMap<String, String> = BTreeMap::new();
        let mut last_key: Option<String> = None;
        for token in text.split(',') {
            let token = token.trim();
            if token.is_empty() {
                continue;
            }
            match token.split_once('=') {
                Some((k, v)) => {
                    let key = k.trim().to_string();
                    if key.is_empty() {
                        return Err(Error::BadParams(format!("empty key in `{token}`")));
                    }
                    entries.insert(key.clone(), v.trim().to_string());
                    last_key = Some(key);
                }
                None => match &last_key {
                    // continuation token: the imaginary part of a complex value
                    Some(key) => {
                        let slot = entries.get_mut(key).expect("key tracked");
                        slot.push(',');
                        slot.push_str(token);
                    }
                    None => {
                        return Err(Error::BadParams(format!(
                            "dangling token `{token}` with no key"
                        )))
                    }
                },
            }
        }
        Ok(Self { entries })
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|s| s.as_str())
    }

    pub fn f64(&self, key: &str) -> Result<f64> {
        let raw = self
            .raw(key)
            .ok_or_else(|| Error::BadParams(format!("missing parameter `{key}`")))?;
        let v: f64 = raw
            .parse()
            .map_err(|_| Error::BadParams(format!("`{key}={raw}` is not a number")))?;
        if !v.is_finite() {
            return Err(Error::BadParams(format!("`{key}` must be finite")));
        }
        Ok(v)
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        if self.contains(key) {
            self.f64(key)
        } else {
            Ok(default)
        }
    }

    pub fn i64(&self, key: &str) -> Result<i64> {
        let raw = self
            .raw(key)
            .ok_or_else(|| Error::BadParams(format!("missing parameter `{key}`")))?;
        raw.parse()
            .map_err(|_| Error::BadParams(format!("`{key}={raw}` is not an integer")))
    }

    pub fn i64_or(&self, key: &str, default: i64) -> Result<i64> {
        if self.contains(key) {
            self.i64(key)
        } else {
            Ok(default)
        }
    }

    /// Complex value, accepted either as `re` or `re,im`.
    pub fn c64(&self, key: &str) -> Result<Complex64> {
        let raw = self
            .raw(key)
            .ok_or_else(|| Error::BadParams(format!("missing parameter `{key}`")))?;
        parse_complex(raw).map_err(|_| Error::BadParams(format!("`{key}={raw}` is not complex")))
    }

    pub fn c64_or(&self, key: &str, default: Complex64) -> Result<Complex64> {
        if self.contains(key) {
            self.c64(key)
        } else {
            Ok(default)
        }
    }

    /// List of doubles, `;`-separated (commas are taken by the record syntax).
    pub fn f64_list(&self, key: &str) -> Result<Vec<f64>> {
        let raw = self
            .raw(key)
            .ok_or_else(|| Error::BadParams(format!("missing parameter `{key}`")))?;
        raw.split(';')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::BadParams(format!("`{key}`: bad list entry `{t}`")))
            })
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.entries {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{k}={v}")?;
            first = false;
        }
        Ok(())
    }
}

pub fn parse_complex(raw: &str) -> std::result::Result<Complex64, ()> {
    let raw = raw.trim();
    match raw.split_once(',') {
        Some((re, im)) => {
            let re: f64 = re.trim().parse().map_err(|_| ())?;
            let im: f64 = im.trim().parse().map_err(|_| ())?;
            Ok(Complex64::new(re, im))
        }
        None => {
            let re: f64 = raw.parse().map_err(|_| ())?;
            Ok(Complex64::new(re, 0.0))
        }
    }
}
