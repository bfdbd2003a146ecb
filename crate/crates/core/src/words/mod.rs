//! Timed words, the pseudo-distance, and ε-separated sets and ε-nets.

mod cover;
mod distance;
mod word;

pub use cover::{exact_capacity, exact_entropy, greedy_net, greedy_separated, CoverError, EXACT_LIMIT};
pub use distance::{directed_distance, distance, Distance, Metric};
pub use word::{parse_word_set, TimedWord, WordError};
