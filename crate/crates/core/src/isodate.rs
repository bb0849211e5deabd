//! ISO-8601 date strings as accepted in date-range filters.
//!
//! Accepted shape: `YYYY-MM-DD`, optionally followed by `Thh:mm:ss` and an
//! optional `Z` or `±hh:mm` offset. The string is never reinterpreted, only
//! checked; time zones carry no meaning here.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Parts {
    year: u32,
    month: u32,
    day: u32,
    time: Option<(u32, u32, u32)>,
    offset: Option<(u32, u32)>,
}

fn digits(b: &[u8], at: usize, n: usize) -> Option<u32> {
    let slice = b.get(at..at + n)?;
    if !slice.iter().all(u8::is_ascii_digit) {
        return None;
    }
    Some(
        slice
            .iter()
            .fold(0, |acc, d| acc * 10 + u32::from(d - b'0')),
    )
}

fn expect(b: &[u8], at: usize, c: u8) -> Option<()> {
    (b.get(at) == Some(&c)).then_some(())
}

fn split(s: &str) -> Option<Parts> {
    let b = s.as_bytes();
    let year = digits(b, 0, 4)?;
    expect(b, 4, b'-')?;
    let month = digits(b, 5, 2)?;
    expect(b, 7, b'-')?;
    let day = digits(b, 8, 2)?;
    let mut parts = Parts {
        year,
        month,
        day,
        time: None,
        offset: None,
    };
    if b.len() == 10 {
        return Some(parts);
    }
    expect(b, 10, b'T')?;
    let h = digits(b, 11, 2)?;
    expect(b, 13, b':')?;
    let m = digits(b, 14, 2)?;
    expect(b, 16, b':')?;
    let sec = digits(b, 17, 2)?;
    parts.time = Some((h, m, sec));
    match b.get(19) {
        None => Some(parts),
        Some(b'Z') if b.len() == 20 => Some(parts),
        Some(b'+' | b'-') if b.len() == 25 => {
            let oh = digits(b, 20, 2)?;
            expect(b, 22, b':')?;
            let om = digits(b, 23, 2)?;
            parts.offset = Some((oh, om));
            Some(parts)
        }
        _ => None,
    }
}

/// True when `s` has the lexical shape of an ISO date, regardless of whether
/// the numbers form a real calendar date.
pub fn matches_pattern(s: &str) -> bool {
    split(s).is_some()
}

fn is_leap(year: u32) -> bool {
    (year.is_multiple_of(4) && !year.is_multiple_of(100)) || year.is_multiple_of(400)
}

fn days_in_month(year: u32, month: u32) -> u32 {
    match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 if is_leap(year) => 29,
        2 => 28,
        _ => 0,
    }
}

/// Checks shape and calendar plausibility, returning a reason on failure.
pub fn check(s: &str) -> Result<(), String> {
    let p = split(s).ok_or_else(|| format!("`{s}` is not an ISO-8601 date"))?;
    if !(1..=12).contains(&p.month) {
        return Err(format!("`{s}` has month {} outside 1-12", p.month));
    }
    if p.day == 0 || p.day > days_in_month(p.year, p.month) {
        return Err(format!("`{s}` has no day {} in that month", p.day));
    }
    if let Some((h, m, sec)) = p.time {
        if h > 23 || m > 59 || sec > 59 {
            return Err(format!("`{s}` has an out-of-range time"));
        }
    }
    if let Some((oh, om)) = p.offset {
        if oh > 23 || om > 59 {
            return Err(format!("`{s}` has an out-of-range offset"));
        }
    }
    Ok(())
}
