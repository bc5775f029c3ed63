use crate::error::{Error, Result};

/// Weakly decreasing and nonnegative.
pub fn is_partition(v: &[i64]) -> bool {
    v.iter().all(|&x| x >= 0) && v.windows(2).all(|w| w[0] >= w[1])
}

/// Partitions of `size` with at most `parts` parts, zero padded to length
/// `parts`, in decreasing lexicographic order.
pub fn partitions(size: i64, parts: usize) -> Vec<Vec<i64>> {
    fn go(rest: i64, cap: i64, slots: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for x in (0..=cap.min(rest)).rev() {
            if x * (slots as i64) < rest {
                break;
            }
            cur.push(x);
            go(rest - x, x, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size >= 0 {
        go(size, size, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

/// Dominance `mu <= lam` for sequences of equal sum, compared by partial
/// sums after sorting each in decreasing order.
pub fn dominates(lam: &[i64], mu: &[i64]) -> bool {
    let mut a = lam.to_vec();
    let mut b = mu.to_vec();
    let n = a.len().max(b.len());
    a.resize(n, 0);
    b.resize(n, 0);
    a.sort_unstable_by(|x, y| y.cmp(x));
    b.sort_unstable_by(|x, y| y.cmp(x));
    let (mut sa, mut sb) = (0, 0);
    for (x, y) in a.iter().zip(&b) {
        sa += x;
        sb += y;
        if sa < sb {
            return false;
        }
    }
    sa == sb
}

/// Semistandard tableaux of shape `shape` and content `content`, each as a
/// list of rows of letters `1, 2, ...`.
pub fn ssyt(shape: &[i64], content: &[i64]) -> Vec<Vec<Vec<i64>>> {
    let rows = shape.iter().filter(|&&x| x > 0).count();
    let shape = &shape[..rows];
    if shape.iter().sum::<i64>() != content.iter().filter(|&&x| x > 0).sum::<i64>() || content.iter().any(|&x| x < 0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut tab: Vec<Vec<i64>> = vec![Vec::new(); rows];
    fill(shape, content, 0, &mut tab, &mut out);
    out
}

fn fill(shape: &[i64], content: &[i64], letter: usize, tab: &mut Vec<Vec<i64>>, out: &mut Vec<Vec<Vec<i64>>>) {
    if letter == content.len() {
        if tab.iter().zip(shape).all(|(r, &s)| r.len() as i64 == s) {
            out.push(tab.clone());
        }
        return;
    }
    let current: Vec<i64> = tab.iter().map(|r| r.len() as i64).collect();
    let mut adds = vec![0i64; shape.len()];
    strips(shape, &current, content[letter], 0, &mut adds, &mut |adds| {
        for (r, &a) in adds.iter().enumerate() {
            tab[r].extend(std::iter::repeat_n(letter as i64 + 1, a as usize));
        }
        fill(shape, content, letter + 1, tab, out);
        for (r, &a) in adds.iter().enumerate() {
            let len = tab[r].len() - a as usize;
            tab[r].truncate(len);
        }
    });
}

/// Horizontal strips of `size` boxes added to `current` inside `shape`.
fn strips(shape: &[i64], current: &[i64], size: i64, row: usize, adds: &mut Vec<i64>, emit: &mut dyn FnMut(&[i64])) {
    if row == shape.len() {
        if size == 0 {
            emit(adds);
        }
        return;
    }
    // a horizontal strip never reaches past the old length of the row above
    let ceiling = if row == 0 { shape[0] } else { shape[row].min(current[row - 1]) };
    let room = (ceiling - current[row]).max(0);
    for a in 0..=room.min(size) {
        adds[row] = a;
        strips(shape, current, size - a, row + 1, adds, emit);
    }
    adds[row] = 0;
}

/// Reading word: rows from the bottom up, each left to right.
pub fn reading_word(tableau: &[Vec<i64>]) -> Vec<i64> {
    tableau.iter().rev().flatten().copied().collect()
}

/// Lascoux-Schutzenberger charge of a word whose content is a partition.
pub fn charge(word: &[i64]) -> Result<u64> {
    let top = word.iter().copied().max().unwrap_or(0);
    let mut counts = vec![0usize; top as usize + 1];
    for &x in word {
        if x < 1 {
            return Err(Error::contract("charge needs letters 1, 2, ..."));
        }
        counts[x as usize] += 1;
    }
    if counts[1..].windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::contract("charge needs partition content"));
    }
    let len = word.len();
    let mut used = vec![false; len];
    let mut total = 0u64;
    let mut left = len;
    while left > 0 {
        let k = (1..=top).filter(|&r| word.iter().zip(&used).any(|(&x, &u)| x == r && !u)).count() as i64;
        // the rightmost unused 1 starts each standard subword
        let mut pos = (0..len).rev().find(|&i| !used[i] && word[i] == 1).expect("partition content");
        used[pos] = true;
        left -= 1;
        let mut index = 0u64;
        for r in 2..=k {
            let before = (0..pos).rev().find(|&i| !used[i] && word[i] == r);
            pos = match before {
                Some(i) => i,
                None => {
                    index += 1;
                    (pos + 1..len).rev().find(|&i| !used[i] && word[i] == r).expect("partition content")
                }
            };
            used[pos] = true;
            left -= 1;
            total += index;
        }
    }
    Ok(total)
}

/// `K_{lam, mu}(t)` as coefficients of `1, t, t^2, ...`; empty when zero.
pub fn kostka_foulkes(lam: &[i64], mu: &[i64]) -> Result<Vec<i64>> {
    if !is_partition(lam) || !is_partition(mu) {
        return Err(Error::contract("Kostka-Foulkes polynomials need partitions"));
    }
    if lam.iter().sum::<i64>() != mu.iter().sum::<i64>() {
        return Err(Error::contract("partitions of different sizes"));
    }
    if !dominates(lam, mu) {
        return Ok(Vec::new());
    }
    let content: Vec<i64> = mu.iter().copied().filter(|&x| x > 0).collect();
    let mut poly: Vec<i64> = Vec::new();
    for t in ssyt(lam, &content) {
        let c = charge(&reading_word(&t))? as usize;
        if poly.len() <= c {
            poly.resize(c + 1, 0);
        }
        poly[c] += 1;
    }
    while poly.last() == Some(&0) {
        poly.pop();
    }
    Ok(poly)
}
