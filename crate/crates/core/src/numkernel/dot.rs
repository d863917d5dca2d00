/// Sum of products with error-free transformations, accurate as if computed
/// in twice the working precision and then rounded.
pub fn compensated_dot(pairs: impl IntoIterator<Item = (f64, f64)>) -> f64 {
    let mut sum = 0.0;
    let mut err = 0.0;
    for (a, b) in pairs {
        let p = a * b;
        let p_err = a.mul_add(b, -p);
        let t = sum + p;
        let z = t - sum;
        err += (sum - (t - z)) + (p - z) + p_err;
        sum = t;
    }
    sum + err
}
