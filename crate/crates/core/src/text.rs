//! Label normalization and tokenization shared by search, embeddings and
//! the TF-IDF index.

use unicode_normalization::UnicodeNormalization;

/// NFC-normalized, lowercased form of a label. Used for comparisons only;
/// labels are always stored verbatim.
pub fn normalize(label: &str) -> String {
    label.trim().nfc().flat_map(char::to_lowercase).collect()
}

/// NFC form without case folding, used for exact-label reuse.
pub fn nfc(label: &str) -> String {
    label.nfc().collect()
}

/// Lowercase terms split on runs of non-alphanumeric characters.
pub fn tokenize(text: &str) -> Vec<String> {
    normalize(text)
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_owned)
        .collect()
}
