#!/usr/bin/env python3
"""Regenerates the shipped lexicons in crates/core/lexicons/.

English open-class entries come from the most frequent English words
(wordfreq) tagged and lemmatized with lemminflect; closed-class words and
domain vocabulary are listed below. Portuguese entries are generated from
curated lemma lists with regular inflection rules.

    pip install wordfreq lemminflect
    python3 tools/gen_lexicons.py
"""
import os
import sys

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "lexicons")

EN_CLOSED = {
    "DET": "the a an this that these those each every some any no all both either neither another such what which whose my your his her its our their".split(),
    "ADP": "of in on at by for with from to into onto upon about above below over under between among through during before after against within without across along around behind beyond near via per toward towards".split(),
    "PRON": "i me you he him she her it we us they them myself yourself himself herself itself ourselves themselves who whom whoever whatever something anything nothing everything someone anyone everyone nobody somebody anybody everybody mine yours hers ours theirs one".split(),
    "CCONJ": "and or but nor yet so".split(),
    "SCONJ": "if when while because although though unless until since whereas whether that than once where".split(),
    "AUX": "be am is are was were been being have has had having do does did shall should will would can could may might must".split(),
    "PART": "not to 's".split(),
    "NUM": "zero one two three four five six seven eight nine ten eleven twelve hundred thousand million first second third".split(),
}
EN_LEMMA = {
    "am": "be", "is": "be", "are": "be", "was": "be", "were": "be", "been": "be", "being": "be",
    "has": "have", "had": "have", "having": "have", "does": "do", "did": "do",
    "me": "i", "him": "he", "her": "she", "us": "we", "them": "they",
    "an": "a", "these": "this", "those": "that",
}
# Words that must be present with these tags regardless of frequency.
EN_DOMAIN = {
    "NOUN": "invoice receipt customer client manager operator clerk administrator admin user account order product supplier vendor payment bill billing report system document record entity actor stakeholder requirement glossary term rule pattern attribute date status approval creation catalog category item line price tax total amount quantity discount address email phone contract employee department company organization board auditor accountant cashier warehouse shipment delivery return refund credit debit balance ledger budget expense revenue profit".split(),
    "VERB": "print approve reject browse manage create read update delete remove search filter close open send receive pay issue archive register validate cancel confirm list view edit submit export import generate calculate assign notify schedule login logout select add insert consult check emit bill invoice".split(),
    "ADJ": "new paid unpaid pending approved rejected valid invalid active inactive internal external main vip".split(),
}

EN_SUFFIXES = [
    ("ies", "NOUN", "ies", "y"), ("ss", "NOUN", "", ""), ("ing", "VERB", "ing", ""),
    ("ed", "VERB", "ed", ""), ("ly", "ADV", "ly", ""), ("tion", "NOUN", "", ""),
    ("sion", "NOUN", "", ""), ("ment", "NOUN", "", ""), ("ness", "NOUN", "", ""),
    ("ity", "NOUN", "", ""), ("able", "ADJ", "", ""), ("ible", "ADJ", "", ""),
    ("ful", "ADJ", "", ""), ("ous", "ADJ", "", ""), ("ive", "ADJ", "", ""),
    ("al", "ADJ", "", ""), ("ize", "VERB", "", ""), ("ise", "VERB", "", ""),
    ("ify", "VERB", "", ""), ("ate", "VERB", "", ""), ("er", "NOUN", "", ""),
    ("or", "NOUN", "", ""), ("s", "NOUN", "s", ""),
]


def english():
    from lemminflect import getAllInflections, getAllLemmas
    from wordfreq import top_n_list

    rows = set()
    closed = set()
    for tag, words in EN_CLOSED.items():
        for w in words:
            rows.add((w, EN_LEMMA.get(w, w), tag))
            closed.add(w)
    for tag, words in EN_DOMAIN.items():
        for w in words:
            rows.add((w, w, tag))
            for forms in getAllInflections(w, upos=tag).values():
                for f in forms:
                    rows.add((f.lower(), w, tag))
    for w in top_n_list("en", 9000):
        if not w.isalpha() or not w.isascii() or w in closed or len(w) < 2:
            continue
        for tag, lemmas in getAllLemmas(w).items():
            if tag in ("NOUN", "VERB", "ADJ", "ADV", "PROPN"):
                rows.add((w, lemmas[0].lower(), tag))
    return rows, EN_SUFFIXES


PT_CLOSED = {
    "DET": "o a os as um uma uns umas este esta estes estas esse essa esses essas aquele aquela aqueles aquelas cada todo toda todos todas algum alguma alguns algumas nenhum nenhuma outro outra outros outras meu minha seu sua seus suas nosso nossa qual quais".split(),
    "ADP": "de em por para com sem sob sobre entre até desde contra perante após ante segundo do da dos das no na nos nas pelo pela pelos pelas ao aos à às num numa dum duma deste desta neste nesta".split(),
    "PRON": "eu tu ele ela nós vós eles elas você vocês me te se lhe nos vos lhes mim ti si isto isso aquilo quem algo alguém ninguém nada tudo".split(),
    "CCONJ": "e ou mas nem porém contudo".split(),
    "SCONJ": "que se porque quando embora enquanto caso conforme".split(),
    "ADV": "não sim já ainda também apenas só muito pouco mais menos bem mal sempre nunca aqui ali hoje ontem amanhã depois antes agora então assim".split(),
    "AUX": "é são foi foram era eram será serão está estão esteve estava tem têm tinha terá pode podem deve devem".split(),
    "NUM": "zero um dois duas três quatro cinco seis sete oito nove dez cem mil".split(),
}
PT_LEMMA = {
    "a": "o", "os": "o", "as": "o", "uma": "um", "uns": "um", "umas": "um",
    "esta": "este", "estes": "este", "estas": "este", "essa": "esse", "esses": "esse", "essas": "esse",
    "aquela": "aquele", "aqueles": "aquele", "aquelas": "aquele", "toda": "todo", "todos": "todo", "todas": "todo",
    "alguma": "algum", "alguns": "algum", "algumas": "algum", "nenhuma": "nenhum", "outra": "outro",
    "outros": "outro", "outras": "outro", "minha": "meu", "sua": "seu", "seus": "seu", "suas": "seu",
    "nossa": "nosso", "quais": "qual", "duas": "dois",
    "é": "ser", "são": "ser", "foi": "ser", "foram": "ser", "era": "ser", "eram": "ser", "será": "ser", "serão": "ser",
    "está": "estar", "estão": "estar", "esteve": "estar", "estava": "estar",
    "tem": "ter", "têm": "ter", "tinha": "ter", "terá": "ter", "pode": "poder", "podem": "poder",
    "deve": "dever", "devem": "dever",
}
PT_VERBS = """criar consultar editar apagar eliminar remover aprovar rejeitar imprimir pagar emitir enviar receber
gerir listar pesquisar procurar filtrar fechar abrir confirmar cancelar registar registrar validar atualizar
alterar modificar visualizar ver mostrar gerar calcular exportar importar guardar gravar selecionar adicionar
inserir associar definir configurar autenticar entrar sair iniciar terminar aceitar recusar anular arquivar
comprar vender faturar cobrar devolver reembolsar notificar avisar agendar marcar solicitar pedir encomendar
entregar expedir verificar analisar avaliar classificar ordenar agrupar contar somar subtrair multiplicar
dividir copiar mover partilhar publicar descarregar carregar submeter assinar autorizar bloquear desbloquear
ativar desativar suspender retomar reabrir concluir completar preencher escrever ler responder perguntar
contactar telefonar indicar informar identificar descrever especificar documentar planear organizar controlar
monitorizar acompanhar supervisionar coordenar executar realizar efetuar processar tratar resolver corrigir
reparar manter preservar proteger garantir assegurar permitir impedir exigir obrigar escolher decidir
determinar estabelecer fixar limitar restringir alargar aumentar diminuir reduzir melhorar otimizar
simplificar integrar sincronizar transferir converter transformar traduzir formatar digitalizar
digitar clicar navegar aceder acessar utilizar usar consumir produzir fabricar montar instalar
desinstalar testar validar depositar levantar transacionar liquidar saldar debitar creditar
orçamentar estimar prever reservar alugar contratar despedir recrutar formar avaliar premiar
abandonar acabar acordar acrescentar adiar admitir adotar adquirir afetar agradecer ajudar ajustar alcançar
alimentar alojar alterar amar andar anotar anunciar apanhar aparecer aplicar apoiar apostar apreciar
aprender apresentar aproveitar apurar arrumar assistir assumir atender atingir atrair atribuir aumentar
avançar baixar basear beneficiar buscar caber calar caminhar candidatar cantar captar carregar casar
causar celebrar centralizar chamar chegar circular citar colaborar colocar começar comentar comer
comparar compensar competir compor comprovar comunicar conceder conduzir conferir conhecer conquistar
conseguir conservar considerar constituir construir contar continuar contribuir convencer convidar
cooperar correr cortar crescer cuidar cumprir cursar dançar declarar dedicar defender deixar demonstrar
depender desaparecer descobrir desejar desenvolver desenhar designar destacar destinar destruir
detetar dirigir discutir dispor distribuir divulgar dormir duplicar durar elaborar eleger elevar
embalar empregar encontrar encerrar enfrentar ensinar entender enumerar envolver esclarecer esconder
esperar estudar evitar examinar existir explicar expor falar faltar fornecer funcionar ganhar girar
gostar governar habitar imaginar implementar incluir informatizar investir jogar juntar lançar lembrar
levar libertar ligar localizar lutar mandar medir mencionar merecer morar mudar nascer necessitar
negociar observar obter ocorrer ocupar olhar oferecer operar optar orientar ouvir participar passar
pensar perceber perder permanecer pertencer pesar possuir praticar precisar preferir preparar prestar
pretender procurar programar prometer promover propor provar pular qualificar quebrar reagir recolher
reconhecer recordar recuperar referir reforçar regressar relacionar renovar repetir representar
respeitar responsabilizar retirar reunir revelar rever saltar salvar seguir separar servir significar
situar sofrer sorrir subir substituir sugerir superar surgir tentar tirar tocar tomar trabalhar trazer
tocar unir valer variar viajar viver voltar votar
""".split()
PT_IRREGULAR = {
    "ver": ["vê", "veem", "visto", "vendo", "vista", "vistos", "vistas"],
    "ler": ["lê", "leem", "lido", "lendo"],
    "pedir": ["pede", "pedem", "pedido", "pedindo"],
    "fazer": ["faz", "fazem", "feito", "fazendo"],
    "dizer": ["diz", "dizem", "dito", "dizendo"],
    "pôr": ["põe", "põem", "posto", "pondo"],
    "escrever": ["escreve", "escrevem", "escrito", "escrevendo"],
    "abrir": ["abre", "abrem", "aberto", "abrindo"],
}
PT_EXTRA_VERBS = ["fazer", "dizer", "ir", "vir", "dar", "ficar", "poder", "dever", "querer", "saber", "ser", "estar", "ter", "haver"]
PT_NOUNS = """fatura recibo cliente gestor operador funcionário administrador utilizador usuário conta encomenda
pedido produto fornecedor pagamento sistema documento registo registro entidade ator requisito glossário termo
regra padrão atributo data estado aprovação criação catálogo categoria item linha preço imposto total valor
quantidade desconto morada endereço email telefone contrato empregado departamento empresa organização
conselho auditor contabilista caixa armazém envio entrega devolução reembolso crédito débito saldo livro
orçamento despesa receita lucro nota relatório lista tabela ficheiro arquivo página ecrã tela menu botão
campo formulário janela mensagem alerta erro aviso sucesso falha pesquisa filtro resultado detalhe resumo
histórico utilizadores cartão banco transferência moeda euro dólar cêntimo ano mês dia hora minuto semana
prazo vencimento emissão número código identificador nome descrição tipo subtipo classe grupo perfil
papel permissão acesso sessão senha palavra utilizador sócio parceiro comprador vendedor gerente diretor
chefe técnico engenheiro analista programador cidadão pessoa família morador loja mercado serviço
processo tarefa atividade evento reunião projeto plano objetivo meta fase etapa versão alteração pedido
recurso equipamento material stock inventário lote remessa fatura-recibo nif contribuinte iva taxa
casa cidade país região distrito rua estrada porta sala edifício escritório sede filial agência balcão
carro veículo camião viagem bilhete voo hotel quarto mesa cadeira computador impressora servidor rede
base dados aplicação programa software hardware componente módulo interface utilizadora plataforma portal
site sítio ligação endereço url imagem foto vídeo som texto título parágrafo capítulo secção anexo assinatura
carimbo selo certificado licença autorização declaração requerimento candidatura proposta oferta orçamento
cotação compra venda troca aluguer renda hipoteca empréstimo juro dívida multa coima penalização prémio
bónus salário ordenado vencimento subsídio pensão reforma seguro apólice sinistro indemnização garantia
reclamação queixa sugestão opinião comentário resposta pergunta questão dúvida problema solução decisão
escolha opção preferência configuração definição parâmetro regra lei norma política procedimento método
técnica ferramenta instrumento máquina peça parte conjunto sistema subsistema função funcionalidade
característica propriedade qualidade quantidade medida unidade peso tamanho altura largura comprimento
volume área superfície temperatura pressão velocidade distância tempo período intervalo início fim meio
centro lado frente fundo topo canto ponto posição local lugar zona espaço ordem sequência série conjunto
coleção catálogo índice inventário registo diário agenda calendário horário turno folga férias feriado
ausência falta presença entrada saída acesso chegada partida ida volta regresso percurso rota caminho
destino origem fonte causa efeito razão motivo objetivo finalidade interesse benefício vantagem desvantagem
risco perigo ameaça segurança proteção defesa controlo inspeção auditoria revisão verificação validação
teste ensaio experiência prova evidência indicador métrica estatística gráfico diagrama modelo esquema
mapa imagem cliente-vip consumidor utente paciente aluno estudante professor formador médico enfermeiro
advogado juiz notário contabilidade tesouraria faturação cobrança logística produção qualidade marketing
publicidade campanha promoção cupão vale oferta brinde amostra embalagem caixa saco palete contentor
""".split()
PT_NOUNS = list(dict.fromkeys(PT_NOUNS))
PT_ADJS = """novo pago pendente aprovado rejeitado válido inválido ativo inativo interno externo principal
anual mensal diário semanal total parcial final inicial completo incompleto público privado simples
obrigatório opcional urgente normal especial geral atual antigo próximo último primeiro segundo
grande pequeno alto baixo longo curto largo estreito rápido lento fácil difícil claro escuro bom mau
melhor pior certo errado correto incorreto verdadeiro falso possível impossível necessário suficiente
disponível indisponível visível invisível acessível seguro perigoso caro barato gratuito livre ocupado
aberto fechado cheio vazio limpo sujo quente frio novo velho jovem moderno clássico nacional internacional
local regional municipal estatal comercial financeiro económico fiscal legal ilegal jurídico técnico
administrativo operacional estratégico digital eletrónico manual automático obrigatório facultativo
temporário permanente provisório definitivo individual coletivo pessoal profissional familiar
""".split()
PT_ADJS = list(dict.fromkeys(PT_ADJS))

PT_SUFFIXES = [
    ("ções", "NOUN", "ões", "ão"), ("ção", "NOUN", "", ""), ("mente", "ADV", "", ""),
    ("dades", "NOUN", "s", ""), ("dade", "NOUN", "", ""), ("ando", "VERB", "ando", "ar"),
    ("endo", "VERB", "endo", "er"), ("indo", "VERB", "indo", "ir"), ("ar", "VERB", "", ""),
    ("er", "VERB", "", ""), ("ir", "VERB", "", ""), ("osos", "ADJ", "s", ""),
    ("osas", "ADJ", "as", "o"), ("oso", "ADJ", "", ""), ("osa", "ADJ", "a", "o"),
    ("vel", "ADJ", "", ""), ("veis", "ADJ", "eis", "el"), ("ores", "NOUN", "es", ""),
    ("os", "NOUN", "s", ""), ("as", "NOUN", "s", ""), ("es", "NOUN", "s", ""),
    ("o", "NOUN", "", ""), ("a", "NOUN", "", ""),
]


def pt_plural(n):
    if n.endswith("ão"):
        return n[:-2] + "ões"
    if n.endswith(("r", "z", "s")):
        return n + "es"
    if n.endswith("m"):
        return n[:-1] + "ns"
    if n.endswith("al"):
        return n[:-2] + "ais"
    if n.endswith("el"):
        return n[:-2] + "éis"
    if n.endswith("ol"):
        return n[:-2] + "óis"
    if n.endswith("il"):
        return n[:-2] + "is"
    return n + "s"


def pt_verb_forms(v):
    if v in PT_IRREGULAR:
        return PT_IRREGULAR[v]
    stem, end = v[:-2], v[-2:]
    if end == "ar":
        forms = [stem + "a", stem + "am", stem + "ado", stem + "ada", stem + "ados", stem + "adas", stem + "ando", stem + "e", stem + "em"]
    elif end == "er":
        forms = [stem + "e", stem + "em", stem + "ido", stem + "ida", stem + "idos", stem + "idas", stem + "endo", stem + "a", stem + "am"]
    elif end == "ir":
        forms = [stem + "e", stem + "em", stem + "ido", stem + "ida", stem + "idos", stem + "idas", stem + "indo", stem + "a", stem + "am"]
    else:
        forms = []
    return forms


def pt_adj_forms(a):
    if a.endswith("o"):
        return [a[:-1] + "a", a + "s", a[:-1] + "as"]
    return [pt_plural(a)]


def portuguese():
    rows = set()
    for tag, words in PT_CLOSED.items():
        for w in words:
            rows.add((w, PT_LEMMA.get(w, w), tag))
    for v in dict.fromkeys(PT_VERBS + PT_EXTRA_VERBS):
        rows.add((v, v, "VERB"))
        for f in pt_verb_forms(v):
            rows.add((f, v, "VERB"))
    for n in dict.fromkeys(PT_NOUNS):
        rows.add((n, n, "NOUN"))
        rows.add((pt_plural(n), n, "NOUN"))
    for a in dict.fromkeys(PT_ADJS):
        rows.add((a, a, "ADJ"))
        for f in pt_adj_forms(a):
            rows.add((f, a, "ADJ"))
    return rows, PT_SUFFIXES


def write(path, header, rows, suffixes):
    order = {"NOUN": 0, "VERB": 1, "ADJ": 2, "ADV": 3, "PROPN": 4}
    with open(path, "w", encoding="utf-8") as f:
        f.write(header)
        f.write("# suffix rules for unknown words, tried in order: -suffix<TAB>UPOS<TAB>strip:append\n")
        for suf, tag, strip, app in suffixes:
            f.write(f"-{suf}\t{tag}\t{strip}:{app}\n")
        f.write("# surface<TAB>lemma<TAB>UPOS\n")
        for s, l, t in sorted(rows, key=lambda r: (r[0], order.get(r[2], 9), r[2], r[1])):
            f.write(f"{s}\t{l}\t{t}\n")
    lemmas = {(l, t) for _, l, t in rows}
    print(f"{path}: {len(rows)} entries, {len(lemmas)} lemma entries", file=sys.stderr)


if __name__ == "__main__":
    os.makedirs(OUT, exist_ok=True)
    rows, suf = english()
    write(os.path.join(OUT, "en.tsv"), "# English lexicon\n", rows, suf)
    rows, suf = portuguese()
    write(os.path.join(OUT, "pt.tsv"), "# Portuguese lexicon\n", rows, suf)
