use super::{mod_inv, Factorization};

/// Primes `<= n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            if let Some(sq) = i.checked_mul(i) {
                for j in (sq..=n).step_by(i) {
                    composite[j] = true;
                }
            }
        }
    }
    out
}

/// Factors every term of the progression `start + step*l` for
/// `l in 0..count` by sieving with the primes up to the square root of the
/// last term. Terms must be nonzero.
///
/// For a prime `p` not dividing `step`, the terms divisible by `p` are the
/// `l` congruent to `-start * step^-1 (mod p)`, so each prime touches
/// `count / p` terms and the whole pass costs `O(count log log N)` divisions
/// instead of one rho run per term.
pub fn factor_progression(start: u64, step: u64, count: usize) -> Vec<Factorization> {
    if count == 0 {
        return Vec::new();
    }
    let last = start as u128 + step as u128 * (count as u128 - 1);
    assert!(last <= u64::MAX as u128, "progression leaves u64 range");
    assert!(start > 0 || step > 0, "zero term in progression");
    let mut residual: Vec<u64> = (0..count as u64).map(|l| start + step * l).collect();
    assert!(residual.iter().all(|&v| v > 0), "zero term in progression");
    let mut found: Vec<Vec<(u64, u32)>> = vec![Vec::new(); count];
    let bound = (last as f64).sqrt() as u64 + 1;
    for p in primes_up_to(bound) {
        let (first, stride) = if step % p == 0 {
            if start % p == 0 {
                (0, 1)
            } else {
                continue;
            }
        } else {
            let inv = mod_inv(step as i64, p).expect("p is prime and does not divide step");
            let neg_start = (p - start % p) % p;
            (((neg_start as u128 * inv as u128) % p as u128) as usize, p as usize)
        };
        let mut l = first;
        while l < count {
            let r = &mut residual[l];
            let mut e = 0;
            while *r % p == 0 {
                *r /= p;
                e += 1;
            }
            if e > 0 {
                found[l].push((p, e));
            }
            l += stride;
        }
    }
    found
        .into_iter()
        .zip(residual)
        .map(|(mut fs, r)| {
            if r > 1 {
                // at most one prime above the sieving bound remains
                fs.push((r, 1));
            }
            Factorization::from_sorted_unchecked(fs)
        })
        .collect()
}
