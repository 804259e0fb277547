#pragma once

#include "cursamp/alias_table.hpp"
#include "cursamp/anchor_schedule.hpp"
#include "cursamp/anchor_selection.hpp"
#include "cursamp/bandit_env.hpp"
#include "cursamp/bandit_policy.hpp"
#include "cursamp/checkpoint.hpp"
#include "cursamp/curriculum_config.hpp"
#include "cursamp/curriculum_experiment.hpp"
#include "cursamp/epoch_sampling.hpp"
#include "cursamp/errors.hpp"
#include "cursamp/ks_test.hpp"
#include "cursamp/operation_log.hpp"
#include "cursamp/random.hpp"
#include "cursamp/regret.hpp"
#include "cursamp/reward_rescaling.hpp"
#include "cursamp/sample_state.hpp"
#include "cursamp/sampler_registry.hpp"
#include "cursamp/synthetic_task.hpp"
#include "cursamp/weights.hpp"
