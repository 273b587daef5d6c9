//! Hangul syllable composition over the Unicode algorithmic block.
//!
//! Precomposed syllables live at U+AC00..U+D7A3 as
//! `S_BASE + (l * V_COUNT + v) * T_COUNT + t` with l in 0..19 choseong,
//! v in 0..21 jungseong, t in 0..28 jongseong (0 = none). The public
//! functions work in compatibility jamo (U+3131..), which is what cue
//! blocks are written in.

pub const S_BASE: u32 = 0xAC00;
pub const L_COUNT: u32 = 19;
pub const V_COUNT: u32 = 21;
pub const T_COUNT: u32 = 28;
pub const N_COUNT: u32 = V_COUNT * T_COUNT;
pub const S_COUNT: u32 = L_COUNT * N_COUNT;

/// Compatibility jamo with a choseong (leading consonant) slot, in slot order.
pub const CHOSEONG: [char; 19] = [
    'ㄱ', 'ㄲ', 'ㄴ', 'ㄷ', 'ㄸ', 'ㄹ', 'ㅁ', 'ㅂ', 'ㅃ', 'ㅅ', 'ㅆ', 'ㅇ', 'ㅈ', 'ㅉ', 'ㅊ',
    'ㅋ', 'ㅌ', 'ㅍ', 'ㅎ',
];

/// Compatibility jamo vowels in jungseong slot order.
pub const JUNGSEONG: [char; 21] = [
    'ㅏ', 'ㅐ', 'ㅑ', 'ㅒ', 'ㅓ', 'ㅔ', 'ㅕ', 'ㅖ', 'ㅗ', 'ㅘ', 'ㅙ', 'ㅚ', 'ㅛ', 'ㅜ', 'ㅝ',
    'ㅞ', 'ㅟ', 'ㅠ', 'ㅡ', 'ㅢ', 'ㅣ',
];

/// Compatibility jamo with a jongseong (trailing consonant) slot, in slot
/// order starting at index 1 (index 0 is the empty slot).
pub const JONGSEONG: [char; 27] = [
    'ㄱ', 'ㄲ', 'ㄳ', 'ㄴ', 'ㄵ', 'ㄶ', 'ㄷ', 'ㄹ', 'ㄺ', 'ㄻ', 'ㄼ', 'ㄽ', 'ㄾ', 'ㄿ', 'ㅀ',
    'ㅁ', 'ㅂ', 'ㅄ', 'ㅅ', 'ㅆ', 'ㅇ', 'ㅈ', 'ㅊ', 'ㅋ', 'ㅌ', 'ㅍ', 'ㅎ',
];

/// Composes a syllable from slot indices.
pub fn compose(l: u32, v: u32, t: u32) -> Option<char> {
    if l >= L_COUNT || v >= V_COUNT || t >= T_COUNT {
        return None;
    }
    char::from_u32(S_BASE + (l * V_COUNT + v) * T_COUNT + t)
}

/// Decomposes a precomposed syllable into slot indices.
pub fn decompose(c: char) -> Option<(u32, u32, u32)> {
    let code = c as u32;
    if !(S_BASE..S_BASE + S_COUNT).contains(&code) {
        return None;
    }
    let index = code - S_BASE;
    Some((index / N_COUNT, (index % N_COUNT) / T_COUNT, index % T_COUNT))
}

pub fn choseong_index(c: char) -> Option<u32> {
    CHOSEONG.iter().position(|&j| j == c).map(|i| i as u32)
}

pub fn jungseong_index(c: char) -> Option<u32> {
    JUNGSEONG.iter().position(|&j| j == c).map(|i| i as u32)
}

/// Jongseong slot index; `None` input means the empty slot.
pub fn jongseong_index(c: char) -> Option<u32> {
    JONGSEONG.iter().position(|&j| j == c).map(|i| i as u32 + 1)
}

/// Composes a syllable from compatibility jamo. `t = None` leaves the
/// jongseong slot empty.
pub fn compose_jamo(l: char, v: char, t: Option<char>) -> Option<char> {
    let l = choseong_index(l)?;
    let v = jungseong_index(v)?;
    let t = match t {
        None => 0,
        Some(c) => jongseong_index(c)?,
    };
    compose(l, v, t)
}

/// Decomposes a precomposed syllable into compatibility jamo.
pub fn decompose_to_compat(c: char) -> Option<(char, char, Option<char>)> {
    let (l, v, t) = decompose(c)?;
    let tail = if t == 0 {
        None
    } else {
        Some(JONGSEONG[(t - 1) as usize])
    };
    Some((CHOSEONG[l as usize], JUNGSEONG[v as usize], tail))
}

/// Standard two-jamo vowel sequences that Hangul writes as one jungseong.
/// Glide-initial pairs (ㅗ/ㅜ/ㅡ/ㅣ first) only; ㅐ/ㅔ are not treated as
/// mergers of ㅏ+ㅣ / ㅓ+ㅣ here, so diphthong cues like ㅏㅣ stay visible.
pub fn diphthong(first: char, second: char) -> Option<char> {
    Some(match (first, second) {
        ('ㅗ', 'ㅏ') => 'ㅘ',
        ('ㅗ', 'ㅐ') => 'ㅙ',
        ('ㅗ', 'ㅣ') => 'ㅚ',
        ('ㅜ', 'ㅓ') => 'ㅝ',
        ('ㅜ', 'ㅔ') => 'ㅞ',
        ('ㅜ', 'ㅣ') => 'ㅟ',
        ('ㅡ', 'ㅣ') => 'ㅢ',
        ('ㅣ', 'ㅏ') => 'ㅑ',
        ('ㅣ', 'ㅐ') => 'ㅒ',
        ('ㅣ', 'ㅓ') => 'ㅕ',
        ('ㅣ', 'ㅔ') => 'ㅖ',
        ('ㅣ', 'ㅗ') => 'ㅛ',
        ('ㅣ', 'ㅜ') => 'ㅠ',
        _ => return None,
    })
}
