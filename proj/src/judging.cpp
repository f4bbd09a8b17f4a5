#include "arena/judging.hpp"

#include <algorithm>
#include <sstream>

#include "arena/tokens.hpp"

namespace arena {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::A: return "A";
    case Verdict::B: return "B";
    case Verdict::Tie: return "Tie";
  }
  return "Tie";
}

Verdict verdict_from_name(const std::string& name) {
  std::string n = to_lower(name);
  if (n == "a") return Verdict::A;
  if (n == "b") return Verdict::B;
  if (n == "tie") return Verdict::Tie;
  throw validation_error("unknown verdict: " + name);
}

Committee select_committee(const std::vector<std::string>& ranking,
                           const std::string& a, const std::string& b,
                           const Registry& registry) {
  Committee c;
  c.basis = ranking;
  for (const std::string& id : ranking) {
    if (id == a || id == b) continue;
    if (registry.same_family(id, a) || registry.same_family(id, b)) continue;
    c.members.push_back(id);
    if (c.members.size() == 5) break;
  }
  if (c.members.empty())
    throw validation_error("no eligible judges for battle between " + a +
                           " and " + b);
  if (c.members.size() < 5)
    c.shortage = "only " + std::to_string(c.members.size()) +
                 " eligible judges available";
  return c;
}

Verdict parse_verdict(const std::string& raw) {
  std::string lower = to_lower(raw);
  size_t best_pos = std::string::npos;
  Verdict best = Verdict::Tie;
  auto consider = [&](const std::string& marker, Verdict v) {
    for (size_t p = lower.find(marker); p != std::string::npos;
         p = lower.find(marker, p + 1)) {
      if (best_pos == std::string::npos || p > best_pos) {
        best_pos = p;
        best = v;
      }
    }
  };
  consider("[[a]]", Verdict::A);
  consider("[[b]]", Verdict::B);
  consider("[[tie]]", Verdict::Tie);
  if (best_pos == std::string::npos)
    throw Error(ErrorKind::Protocol, "no verdict marker in judge output");
  return best;
}

Verdict majority_vote(const std::vector<Judgment>& final_round) {
  int a = 0, b = 0, tie = 0, voters = 0;
  for (const Judgment& j : final_round) {
    if (!j.verdict) continue;
    ++voters;
    switch (*j.verdict) {
      case Verdict::A: ++a; break;
      case Verdict::B: ++b; break;
      case Verdict::Tie: ++tie; break;
    }
  }
  if (voters == 0)
    throw validation_error("majority_vote needs at least one vote");
  if (a > b && a > tie) return Verdict::A;
  if (b > a && b > tie) return Verdict::B;
  return Verdict::Tie;
}

JudgePrompts JudgePrompts::english() {
  JudgePrompts p;
  p.initial_prompt =
      "This is a chatbot arena. Two AI assistants had a multi-round debate on "
      "who is more helpful. Please act as an impartial judge and evaluate the "
      "capability of two AI assistants. You should choose the assistant that "
      "follows instructions and answers questions better. Your evaluation "
      "should consider factors such as helpfulness, relevance, and accuracy. "
      "Begin your evaluation by comparing the responses of the two assistants "
      "and provide a short explanation. Avoid any position biases and ensure "
      "that the order in which the responses were presented does not "
      "influence your decision. DO NOT allow the LENGTH of the responses to "
      "influence your evaluation, choose the one that is straight-to-the-point "
      "instead of unnecessarily verbose. When the two candidates perform "
      "equally well, choose the SHORTER answer. Do not favor certain names of "
      "the assistants. Be as objective as possible. After providing your "
      "explanation concisely within 200 words, output your final verdict by "
      "strictly following this format: \"[[A]]\" if assistant A is better, "
      "\"[[B]]\" if assistant B is better, and \"[[Tie]]\" for a tie. Finish "
      "your judgement within 300 words.";
  p.discussion_prompt =
      "Below are the responses from other judges in the committee. Please "
      "read them and decide whether you want to adjust your rating or "
      "maintain your original judgement. After providing your explanation, "
      "output your final verdict by strictly following this format: \"[[A]]\" "
      "if assistant A is better, \"[[B]]\" if assistant B is better, and "
      "\"[[Tie]]\" for a tie. Finish your judgement within 300 words.";
  p.reference_header = "Reference answer for the initial question:";
  return p;
}

std::string render_for_judges(const Battle& battle, bool initial_only) {
  std::ostringstream out;
  out << "Initial user question: " << battle.question.text << "\n\n";
  for (const Turn& t : battle.turns) {
    if (initial_only && t.spec.index != 1 && t.spec.index != 4) continue;
    out << "Assistant " << seat_name(t.spec.speaker) << ": ";
    bool first = true;
    for (const Segment& s : t.segments) {
      if (s.kind == ActionKind::Think) continue;
      if (!first) out << " ";
      first = false;
      out << "<" << action_name(s.kind) << ">" << s.text << "</"
          << action_name(s.kind) << ">";
    }
    out << "\n";
  }
  return out.str();
}

JudgingPanel::JudgingPanel(GatewayResolver resolver, JudgeOptions options)
    : resolver_(std::move(resolver)), options_(std::move(options)) {}

Judgment JudgingPanel::judge_once(const Battle& battle,
                                  const std::string& judge,
                                  const std::vector<ChatMessage>& messages,
                                  int round) {
  Judgment out;
  out.judge = judge;
  out.round = round;

  ChatRequest req;
  req.messages = messages;
  req.max_tokens = token_cap(options_.word_cap);
  req.temperature = options_.temperature;
  req.model_ref = judge;
  req.seed = static_cast<std::int64_t>(hash_combine(
      hash_combine(fnv1a(battle.id), fnv1a(judge)), round));

  try {
    Completion c = resolver_(judge).complete(req);
    out.rationale = c.text;
    try {
      out.verdict = parse_verdict(c.text);
    } catch (const Error&) {
      // one re-prompt, then abstain
      ChatRequest retry = req;
      retry.messages.push_back({Role::Assistant, c.text});
      retry.messages.push_back(
          {Role::User,
           "Please output your final verdict strictly following this format: "
           "\"[[A]]\", \"[[B]]\", or \"[[Tie]]\"."});
      retry.seed = static_cast<std::int64_t>(hash_combine(
          static_cast<std::uint64_t>(*req.seed), fnv1a("retry")));
      try {
        Completion c2 = resolver_(judge).complete(retry);
        out.verdict = parse_verdict(c2.text);
        out.rationale += "\n" + c2.text;
      } catch (const Error&) {
        out.verdict = std::nullopt;
      }
    }
  } catch (const Error&) {
    out.verdict = std::nullopt;  // provider down: abstain
  }
  return out;
}

std::vector<Judgment> JudgingPanel::initial_judgments(
    const Battle& battle, const Committee& committee) {
  if (battle.void_battle)
    throw validation_error("cannot judge a void battle: " + battle.id);

  std::string transcript =
      render_for_judges(battle, options_.initial_responses_only);

  std::vector<Judgment> out;
  for (const std::string& judge : committee.members) {
    std::ostringstream content;
    content << options_.prompts.initial_prompt << "\n\n";
    if (battle.reference_answer)
      content << options_.prompts.reference_header << "\n"
              << *battle.reference_answer << "\n\n";
    content << "[The Start of the Debate]\n"
            << transcript << "[The End of the Debate]";
    std::vector<ChatMessage> msgs = {{Role::User, content.str()}};
    out.push_back(judge_once(battle, judge, msgs, 0));
  }
  return out;
}

std::vector<Judgment> JudgingPanel::discussion_round(
    const Battle& battle, const Committee& committee,
    const std::vector<Judgment>& prior, int round) {
  if (round < 1) throw validation_error("discussion rounds start at 1");
  // the previous round must be complete for every member
  for (const std::string& member : committee.members) {
    bool found = std::any_of(prior.begin(), prior.end(), [&](const Judgment& j) {
      return j.judge == member && j.round == round - 1;
    });
    if (!found)
      throw validation_error("missing round " + std::to_string(round - 1) +
                             " judgment for " + member);
  }

  std::string transcript =
      render_for_judges(battle, options_.initial_responses_only);

  std::vector<Judgment> out;
  for (size_t i = 0; i < committee.members.size(); ++i) {
    const std::string& judge = committee.members[i];
    auto own = std::find_if(prior.begin(), prior.end(), [&](const Judgment& j) {
      return j.judge == judge && j.round == round - 1;
    });
    if (!own->verdict) continue;  // abstained earlier: stays out

    // peers are anonymized as "Judge k"
    std::ostringstream peers;
    for (size_t k = 0; k < committee.members.size(); ++k) {
      if (k == i) continue;
      const std::string& other = committee.members[k];
      auto oj = std::find_if(prior.begin(), prior.end(), [&](const Judgment& j) {
        return j.judge == other && j.round == round - 1;
      });
      if (oj == prior.end() || !oj->verdict) continue;
      peers << "Judge " << (k + 1) << ": " << oj->rationale
            << "\nJudge " << (k + 1) << " verdict: [[" << verdict_name(*oj->verdict)
            << "]]\n\n";
    }

    std::ostringstream initial;
    initial << options_.prompts.initial_prompt << "\n\n";
    if (battle.reference_answer)
      initial << options_.prompts.reference_header << "\n"
              << *battle.reference_answer << "\n\n";
    initial << "[The Start of the Debate]\n"
            << transcript << "[The End of the Debate]";

    std::vector<ChatMessage> msgs = {
        {Role::User, initial.str()},
        {Role::Assistant, own->rationale},
        {Role::User, options_.prompts.discussion_prompt + "\n\n" + peers.str()},
    };
    out.push_back(judge_once(battle, judge, msgs, round));
  }
  return out;
}

}  // namespace arena
