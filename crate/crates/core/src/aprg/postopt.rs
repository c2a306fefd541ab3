use ndarray::ArrayView2;

use super::{AprgConfig, RewardCritic};
use crate::env::{Action, Goal};
use crate::Error;

/// Refine `action` by projected gradient ascent on the critic-estimated
/// reward `a -> R(Q(s, a), g)`.
///
/// Works in normalized action units. Each of the `post_opt_steps` steps starts
/// at `post_opt_step_size` along the gradient, projects onto the action box,
/// and halves the step until the estimated reward does not decrease; if no
/// halving helps, ascent stops early. The returned action therefore never
/// scores below the input.
pub fn post_optimize_action<C: RewardCritic>(
    critic: &C,
    state: &[f64],
    action: Action,
    goal: &Goal,
    config: &AprgConfig,
) -> Result<Action, Error> {
    if config.post_opt_steps == 0 {
        return Ok(action);
    }
    let head = critic.head();
    let s = ArrayView2::from_shape((1, state.len()), state).expect("contiguous");

    let eval = |a: &[f64; 3]| -> Result<(f64, [f64; 3]), Error> {
        let av = ArrayView2::from_shape((1, 3), a).expect("contiguous");
        let (q, tape) = critic.forward(s, av)?;
        let (r, dq) = head.reward_and_grad(q.row(0).as_slice().expect("row-major"), goal);
        let dq = ArrayView2::from_shape((1, dq.len()), &dq).expect("contiguous").to_owned();
        let ga = critic.action_grad(&tape, dq.view())?;
        Ok((r, [ga[[0, 0]], ga[[0, 1]], ga[[0, 2]]]))
    };

    let mut a = action.to_normalized();
    let (mut reward, mut grad) = eval(&a)?;
    for _ in 0..config.post_opt_steps {
        let mut step = config.post_opt_step_size;
        let mut accepted = None;
        for _ in 0..=config.post_opt_max_halvings {
            let cand = std::array::from_fn(|i| (a[i] + step * grad[i]).clamp(-1.0, 1.0));
            if cand == a {
                break;
            }
            let (r, g) = eval(&cand)?;
            if r >= reward {
                accepted = Some((cand, r, g));
                break;
            }
            step *= 0.5;
        }
        match accepted {
            Some((cand, r, g)) => {
                a = cand;
                reward = r;
                grad = g;
            }
            None => break,
        }
    }
    Ok(Action::from_normalized(a))
}
