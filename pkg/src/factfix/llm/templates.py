"""Prompt templates for question generation, answering, refinement and judging.

The few-shot templates carry their worked examples inline so that a given
template id always renders to byte-identical text for the same bindings,
which keeps the completion cache effective across runs.
"""

from __future__ import annotations

import re

_PLACEHOLDER = re.compile(r"\{(\w+)\}")


class MissingBindingError(KeyError):
    """A placeholder in the template body had no binding."""


COVE_GEN_QUESTIONS = """\
Your task is to create verification questions based on the below original question and the baseline response. The verification questions are meant for verifying the factual accuracy in the baseline response. Output should be numbered list of verification questions.

Actual Question: {original_question}
Baseline Response: {baseline_response}

Final Verification Questions:"""

COVE_ANSWER = """\
Answer the following question correctly based on the provided context. The question could be tricky as well, so think step by step and answer it correctly.

Context: {search_result}

Question: {verification_question}

Answer:"""

COVE_REFINE = """\
Given the below `Original Query` and `Baseline Answer`, analyze the `Verification Questions & Answers` to finally filter the refined answer.

Original Query: {original_question}

Baseline Answer: {baseline_response}

Verification Questions & Answer Pairs:
{verification_answers}

Final Refined Answer:"""

RARR_GEN_QUESTIONS = """\
I will check things you said and ask questions.

You said: Your nose switches back and forth between nostrils. When you sleep, you switch about every 45 minutes. This is to prevent a buildup of mucus. It's called the nasal cycle.
To verify it,
1. I googled: Does your nose switch between nostrils?
2. I googled: How often does your nostrils switch?
3. I googled: Why does your nostril switch?
4. I googled: What is nasal cycle?

You said: The Stanford Prison Experiment was conducted in the basement of Encina Hall, Stanford's psychology building.
To verify it,
1. I googled: Where was Stanford Prison Experiment was conducted?

You said: The Little House books were written by Laura Ingalls Wilder. The books were published by HarperCollins.
To verify it,
1. I googled: Who wrote the Little House books?
2. I googled: Who published the Little House books?

You said: The Havel-Hakimi algorithm is an algorithm for converting the adjacency matrix of a graph into its adjacency list. It is named after Vaclav Havel and Samih Hakimi.
To verify it,
1. I googled: What does the Havel-Hakimi algorithm do?
2. I googled: Who is the Havel-Hakimi algorithm named after?

You said: "Time of My Life" is a song by American singer-songwriter Bill Medley from the soundtrack of the 1987 film Dirty Dancing. The song was produced by Michael Lloyd.
To verify it,
1. I googled: Who sings the song "Time of My Life"?
2. I googled: Which film is the song "Time of My Life" from?
3. I googled: Who produced the song "Time of My Life"?

You said: Kelvin Hopins was suspended from the Labor Party because he had allegedly sexually harassed and behaved inappropriately towards a Labour Party activist, Ava Etemadzadeh.
To verify it,
1. I googled: Why was Kelvin Hopins suspended from the Labor Party?

You said: {claim}
To verify it,"""

RARR_ANSWER = """\
I will check some things you said.

1. You said: Your nose switches back and forth between nostrils. When you sleep, you switch about every 45 minutes. This is to prevent a buildup of mucus. It's called the nasal cycle.
2. I checked: How often do your nostrils switch?
3. I found this article: Although we don't usually notice it, during the nasal cycle one nostril becomes congested and thus contributes less to airflow, while the other becomes decongested. On average, the congestion pattern switches about every 2 hours, according to a small 2016 study published in the journal PLOS One.
4. Reasoning: The article said the nose's switching time is about every 2 hours, and you said the nose's switching time is about every 45 minutes.
5. Therefore: This disagrees with what you said.

1. You said: The Little House books were written by Laura Ingalls Wilder. The books were published by HarperCollins.
2. I checked: Who published the Little House books?
3. I found this article: These are the books that started it all -- the stories that captured the hearts and imaginations of children and young adults worldwide. Written by Laura Ingalls Wilder and published by HarperCollins, these beloved books remain a favorite to this day.
4. Reasoning: The article said the Little House books were published by HarperCollins and you said the books were published by HarperCollins.
5. Therefore: This agrees with what you said.

1. You said: The Stanford Prison Experiment was conducted in the basement of Encina Hall, Stanford's psychology building.
2. I checked: Where was Stanford Prison Experiment conducted?
3. I found this article: The Stanford Prison Experiment was conducted in August 1971 in the basement of Jordan Hall, the university's psychology building, by a research group led by psychology professor Philip Zimbardo.
4. Reasoning: The article said the experiment was conducted in the basement of Jordan Hall and you said it was conducted in the basement of Encina Hall.
5. Therefore: This disagrees with what you said.

1. You said: "Time of My Life" is a song by American singer-songwriter Bill Medley from the soundtrack of the 1987 film Dirty Dancing. The song was produced by Michael Lloyd.
2. I checked: Who produced the song "Time of My Life"?
3. I found this article: On September 8, 2010, the original demo of this song, along with a remix by producer Michael Lloyd, was released as digital files in an effort to raise money for the Patrick Swayze Pancreas Cancer Research Foundation at Stanford University.
4. Reasoning: The article said the song was produced by Michael Lloyd and you said the song was produced by Michael Lloyd.
5. Therefore: This agrees with what you said.

1. You said: The Havel-Hakimi algorithm is an algorithm for converting the adjacency matrix of a graph into its adjacency list. It is named after Vaclav Havel and Samih Hakimi.
2. I checked: What does the Havel-Hakimi algorithm do?
3. I found this article: The Havel-Hakimi algorithm is an algorithm in graph theory solving the graph realization problem. That is, it answers the following question: Given a finite list of nonnegative integers in non-increasing order, is there a simple graph such that its degree sequence is exactly this list?
4. Reasoning: The article said the Havel-Hakimi algorithm solves the graph realization problem and you said it converts the adjacency matrix of a graph into its adjacency list.
5. Therefore: This disagrees with what you said.

1. You said: Kelvin Hopins was suspended from the Labor Party because he had allegedly sexually harassed and behaved inappropriately towards a Labour Party activist, Ava Etemadzadeh.
2. I checked: Why was Kelvin Hopins suspended from the Labor Party?
3. I found this article: A former Labour MP has left the party before an inquiry into sexual harassment allegations against him was able to be concluded, the party has confirmed. Kelvin Hopkins was accused in 2017 of inappropriate physical contact and was suspended by the Labour party pending an investigation.
4. Reasoning: The article said Kelvin Hopkins was suspended after being accused of inappropriate physical contact and you said he was suspended because he allegedly sexually harassed and behaved inappropriately towards a Labour Party activist.
5. Therefore: This agrees with what you said.

1. You said: {claim}
2. I checked: {query}
3. I found this article: {evidence}
4. Reasoning:"""

RARR_REFINE = """\
I will fix some things you said.

1. You said: Your nose switches back and forth between nostrils. When you sleep, you switch about every 45 minutes. This is to prevent a buildup of mucus. It's called the nasal cycle.
2. I checked: How often do your nostrils switch?
3. I found this article: Although we don't usually notice it, during the nasal cycle one nostril becomes congested and thus contributes less to airflow, while the other becomes decongested. On average, the congestion pattern switches about every 2 hours, according to a small 2016 study published in the journal PLOS One.
4. This suggests 45 minutes switch time in your statement is wrong.
5. My fix: Your nose switches back and forth between nostrils. When you sleep, you switch about every 2 hours. This is to prevent a buildup of mucus. It's called the nasal cycle.

1. You said: In the battles of Lexington and Concord, the British side was led by General Thomas Hall.
2. I checked: Who led the British side in the battle of Lexington and Concord?
3. I found this article: Interesting Facts about the Battles of Lexington and Concord. The British were led by Lieutenant Colonel Francis Smith. There were 700 British regulars.
4. This suggests General Thomas Hall in your statement is wrong.
5. My fix: In the battles of Lexington and Concord, the British side was led by Lieutenant Colonel Francis Smith.

1. You said: The Stanford Prison Experiment was conducted in the basement of Encina Hall, Stanford's psychology building.
2. I checked: Where was Stanford Prison Experiment conducted?
3. I found this article: The Stanford Prison Experiment was conducted in August 1971 in the basement of Jordan Hall, the university's psychology building, by a research group led by psychology professor Philip Zimbardo.
4. This suggests Encina Hall in your statement is wrong.
5. My fix: The Stanford Prison Experiment was conducted in the basement of Jordan Hall, Stanford's psychology building.

1. You said: The Havel-Hakimi algorithm is an algorithm for converting the adjacency matrix of a graph into its adjacency list. It is named after Vaclav Havel and Samih Hakimi.
2. I checked: What does the Havel-Hakimi algorithm do?
3. I found this article: The Havel-Hakimi algorithm is an algorithm in graph theory solving the graph realization problem. That is, it answers the following question: Given a finite list of nonnegative integers in non-increasing order, is there a simple graph such that its degree sequence is exactly this list?
4. This suggests converting the adjacency matrix of a graph into its adjacency list in your statement is wrong.
5. My fix: The Havel-Hakimi algorithm is an algorithm in graph theory solving the graph realization problem. It is named after Vaclav Havel and Samih Hakimi.

1. You said: "Time of My Life" is a song by American singer-songwriter Bill Medley from the soundtrack of the 1987 film Dirty Dancing. The song was produced by Phil Ramone.
2. I checked: Who produced the song "Time of My Life"?
3. I found this article: On September 8, 2010, the original demo of this song, along with a remix by producer Michael Lloyd, was released as digital files in an effort to raise money for the Patrick Swayze Pancreas Cancer Research Foundation at Stanford University.
4. This suggests Phil Ramone in your statement is wrong.
5. My fix: "Time of My Life" is a song by American singer-songwriter Bill Medley from the soundtrack of the 1987 film Dirty Dancing. The song was produced by Michael Lloyd.

1. You said: Kelvin Hopins was suspended from the Labor Party due to his membership in the Conservative Party.
2. I checked: Why was Kelvin Hopins suspended from the Labor Party?
3. I found this article: A former Labour MP has left the party before an inquiry into sexual harassment allegations against him was able to be concluded, the party has confirmed. Kelvin Hopkins was accused in 2017 of inappropriate physical contact and was suspended by the Labour party pending an investigation.
4. This suggests membership in the Conservative Party in your statement is wrong.
5. My fix: Kelvin Hopins was suspended from the Labor Party after being accused of inappropriate physical contact towards a Labour Party activist.

1. You said: {claim}
2. I checked: {query}
3. I found this article: {evidence}
4. This suggests"""

_GEVAL_SCALE = """\

Input: {input}

Actual Output: {actual_output}

After following the steps above, give your final score as a single integer from 1 (worst) to 10 (best).

Score:"""

GEVAL_FACTUALITY = """\
Evaluate if the actual output contains hallucinated information not present in the input.

STEPS: Identify any claims or statements in the 'actual output'.
Compare each claim with the 'input' to check for the presence of supporting information.
Mark any claims that are not supported by the 'input' as hallucinated.
Penalize heavily for any introduction of new, unsupported facts.
""" + _GEVAL_SCALE

GEVAL_RELEVANCE = """\
Evaluate the relevancy of the actual output to the input.

STEPS: Check if 'actual output' directly addresses the query or topic presented in 'input'.
Penalize responses that are off-topic or provide irrelevant information.
""" + _GEVAL_SCALE

GEVAL_OVERALL = """\
Evaluate the overall quality and correctness of the actual output compared to the input.

STEPS: Assess if the 'actual output' provides a coherent and accurate response to 'input'.
Penalize factual inaccuracies, grammatical errors, and unclear language.
""" + _GEVAL_SCALE

_TEMPLATES: dict[str, str] = {
    "cove_gen_questions": COVE_GEN_QUESTIONS,
    "cove_answer": COVE_ANSWER,
    "cove_refine": COVE_REFINE,
    "rarr_gen_questions": RARR_GEN_QUESTIONS,
    "rarr_answer": RARR_ANSWER,
    "rarr_refine": RARR_REFINE,
    "geval_factuality": GEVAL_FACTUALITY,
    "geval_relevance": GEVAL_RELEVANCE,
    "geval_overall": GEVAL_OVERALL,
}


def template_ids() -> list[str]:
    return sorted(_TEMPLATES)


def template_body(template_id: str) -> str:
    try:
        return _TEMPLATES[template_id]
    except KeyError:
        raise KeyError(f"unknown template id: {template_id}") from None


def placeholders(template_id: str) -> set[str]:
    return set(_PLACEHOLDER.findall(template_body(template_id)))


def render(template_id: str, bindings: dict[str, str]) -> str:
    """Substitute bindings into a template body.

    Extra bindings are ignored; a placeholder without a binding raises
    :class:`MissingBindingError` naming it.
    """
    body = template_body(template_id)

    def _sub(match: re.Match) -> str:
        name = match.group(1)
        if name not in bindings:
            raise MissingBindingError(name)
        return str(bindings[name])

    return _PLACEHOLDER.sub(_sub, body)
