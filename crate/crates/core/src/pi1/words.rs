//! Words in a free group. Letter `+(g+1)` is generator `g`, `-(g+1)` its
//! inverse.

pub type Word = Vec<i32>;

pub fn generator_of(letter: i32) -> usize {
    (letter.unsigned_abs() - 1) as usize
}

pub fn letter(generator: usize, positive: bool) -> i32 {
    let l = generator as i32 + 1;
    if positive {
        l
    } else {
        -l
    }
}

pub fn free_reduce(word: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free reduction followed by cancelling matching letters at both ends.
pub fn cyclic_reduce(word: &[i32]) -> Word {
    let w = free_reduce(word);
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == -w[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

pub fn inverse(word: &[i32]) -> Word {
    word.iter().rev().map(|&l| -l).collect()
}

pub fn occurrences(word: &[i32], generator: usize) -> usize {
    word.iter().filter(|&&l| generator_of(l) == generator).count()
}

/// Replace every occurrence of `generator` by `image` (and its inverse by
/// the inverse image), then reduce freely.
pub fn substitute(word: &[i32], generator: usize, image: &[i32]) -> Word {
    let inv = inverse(image);
    let mut out = Vec::with_capacity(word.len() + image.len());
    for &l in word {
        if generator_of(l) == generator {
            out.extend_from_slice(if l > 0 { image } else { &inv });
        } else {
            out.push(l);
        }
    }
    free_reduce(&out)
}

/// For a cyclically reduced relator containing `generator` exactly once,
/// the word the generator equals.
pub fn solve_for(relator: &[i32], generator: usize) -> Word {
    let pos = relator.iter().position(|&l| generator_of(l) == generator).expect("generator occurs");
    // relator = P x^e Q  ⇒  x^e = (Q P)⁻¹
    let mut qp: Word = relator[pos + 1..].to_vec();
    qp.extend_from_slice(&relator[..pos]);
    let solved = inverse(&qp);
    if relator[pos] > 0 {
        free_reduce(&solved)
    } else {
        free_reduce(&qp)
    }
}
